#include "ffvar/factor.hpp"

#include <algorithm>
#include <map>

namespace ffvar {

namespace {

// counter-based deterministic stream (splitmix64)
struct SplitMix {
  uint64_t state;
  explicit SplitMix(uint64_t s) : state(s) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

// T^(q^k) mod f for k = 1..: iterate frobenius x -> x^q mod f
Poly frobenius_step(const Poly& x, const Poly& f) {
  return Poly::powmod(x, static_cast<uint64_t>(f.q()), f);
}

// x^e mod f where e = (q^d - 1) / 2 may exceed 64 bits for large q, d.
// e is produced on the fly from the base-q expansion: q^d - 1 = sum (q-1) q^i,
// so x^{(q^d-1)} = prod_i (x^{q^i})^{q-1}; take a square root of the exponent
// by halving q-1 on one digit... Simpler and still exact: exponentiate by
// repeated squaring over a big exponent held in a vector of 64-bit limbs.
struct BigExp {
  // little-endian 64-bit limbs
  std::vector<uint64_t> limb;

  // (q^d - 1) / 2
  static BigExp half_group_order(int64_t q, int d) {
    BigExp e;
    e.limb.assign(1, 1);
    for (int i = 0; i < d; ++i) e.mul_small(static_cast<uint64_t>(q));
    e.dec();
    e.halve();
    return e;
  }

  void mul_small(uint64_t m) {
    unsigned __int128 carry = 0;
    for (auto& l : limb) {
      unsigned __int128 v = static_cast<unsigned __int128>(l) * m + carry;
      l = static_cast<uint64_t>(v);
      carry = v >> 64;
    }
    if (carry) limb.push_back(static_cast<uint64_t>(carry));
  }

  void dec() {
    for (auto& l : limb) {
      if (l--) break;
    }
    while (limb.size() > 1 && limb.back() == 0) limb.pop_back();
  }

  void halve() {
    uint64_t carry = 0;
    for (size_t i = limb.size(); i-- > 0;) {
      uint64_t next_carry = limb[i] & 1;
      limb[i] = (limb[i] >> 1) | (carry << 63);
      carry = next_carry;
    }
    while (limb.size() > 1 && limb.back() == 0) limb.pop_back();
  }

  int bits() const {
    int top = 63;
    while (top >= 0 && !((limb.back() >> top) & 1)) --top;
    return static_cast<int>(limb.size() - 1) * 64 + top + 1;
  }

  bool bit(int i) const { return (limb[i / 64] >> (i % 64)) & 1; }
};

Poly powmod_big(Poly x, const BigExp& e, const Poly& f) {
  Poly r = Poly::one(f.q());
  x = x % f;
  for (int i = e.bits() - 1; i >= 0; --i) {
    r = (r * r) % f;
    if (e.bit(i)) r = (r * x) % f;
  }
  return r;
}

// p-th root of f when f'(T) = 0, i.e. f = g(T^p): over the prime field,
// coefficients are fixed by Frobenius, so g just takes every p-th coefficient.
Poly pth_root(const Poly& f) {
  const int64_t p = f.q();
  std::vector<int64_t> g(f.deg() / p + 1);
  for (size_t i = 0; i < g.size(); ++i) g[i] = f.coeff(static_cast<int>(i * p));
  return Poly(f.q(), std::move(g));
}

// squarefree decomposition: returns (g, m) pairs with f = prod g^m,
// g squarefree and pairwise coprime (Yun's algorithm adapted to char p)
void squarefree_decompose(const Poly& f, int outer_mult, std::vector<std::pair<Poly, int>>& out) {
  if (f.deg() == 0) return;
  const Poly d = f.derivative();
  if (d.is_zero()) {
    // f = g(T^p): recurse on the p-th root with multiplicity scaled by p
    squarefree_decompose(pth_root(f), outer_mult * static_cast<int>(f.q()), out);
    return;
  }
  Poly c = Poly::gcd(f, d);   // carries repeated factors
  Poly w = f / c;             // product of factors with multiplicity not divisible by p
  int m = 1;
  while (!w.is_one()) {
    Poly y = Poly::gcd(w, c);
    Poly part = w / y;  // factors of exact multiplicity m
    if (part.deg() > 0) out.emplace_back(part.monic(), m * outer_mult);
    w = std::move(y);
    c = c / w;
    ++m;
  }
  if (c.deg() > 0) squarefree_decompose(c, outer_mult, out);  // multiplicities divisible by p
}

// distinct-degree split of a squarefree monic f: returns (product, d) pairs
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  Poly rest = f;
  Poly x = Poly::var(f.q()) % f;
  Poly xq = x;  // T^(q^d) mod f, advanced once per d
  for (int d = 1; rest.deg() >= 2 * d; ++d) {
    xq = frobenius_step(xq, f);
    Poly g = Poly::gcd(xq - Poly::var(f.q()), rest);
    if (g.deg() > 0) {
      out.emplace_back(g, d);
      rest = rest / g;
    }
  }
  if (rest.deg() > 0) out.emplace_back(rest, rest.deg());
  return out;
}

// equal-degree split (Cantor-Zassenhaus) of a squarefree product of
// irreducibles all of degree d; q odd
void equal_degree(const Poly& f, int d, SplitMix& rng, std::vector<Poly>& out) {
  if (f.deg() == d) {
    out.push_back(f.monic());
    return;
  }
  const int64_t q = f.q();
  const BigExp e = BigExp::half_group_order(q, d);
  for (;;) {
    // random splitter of degree < deg f
    std::vector<int64_t> c(f.deg());
    for (auto& x : c) x = static_cast<int64_t>(rng.next() % static_cast<uint64_t>(q));
    Poly r(q, std::move(c));
    if (r.deg() < 1) continue;
    Poly g = Poly::gcd(r, f);
    if (g.deg() == 0) {
      Poly s = powmod_big(r, e, f) - Poly::one(q);
      g = Poly::gcd(s, f);
    }
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

bool is_irreducible(const Poly& f) {
  if (f.deg() < 1) return false;
  if (f.deg() == 1) return true;
  const int n = f.deg();
  const Poly fm = f.monic();
  const Poly x = Poly::var(f.q());
  // Rabin: T^(q^n) = T mod f, and gcd(T^(q^(n/p)) - T, f) = 1 for primes p | n
  std::vector<Poly> frob(n + 1, Poly(f.q()));  // frob[k] = T^(q^k) mod f
  frob[0] = x % fm;
  for (int k = 1; k <= n; ++k) frob[k] = frobenius_step(frob[k - 1], fm);
  if (frob[n] != x % fm) return false;
  for (int p = 2; p <= n; ++p) {
    if (n % p != 0 || !is_prime_u64(static_cast<uint64_t>(p))) continue;
    if (Poly::gcd(frob[n / p] - x, fm).deg() != 0) return false;
  }
  return true;
}

Factorization factor(const Poly& f, uint64_t seed) {
  if (f.is_zero()) throw std::domain_error("factor: zero polynomial");
  Factorization result;
  if (f.deg() == 0) return result;

  std::vector<std::pair<Poly, int>> squarefree_parts;
  squarefree_decompose(f.monic(), 1, squarefree_parts);

  SplitMix rng(seed ^ f.hash() ^ 0xffb0a1c5d2e39c0full);
  for (auto& [part, mult] : squarefree_parts) {
    for (auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& p : irr) result.factors.emplace_back(p, mult);
    }
  }
  std::sort(result.factors.begin(), result.factors.end());
  return result;
}

int mobius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

int64_t count_irreducibles(int64_t q, int n) {
  if (n < 1) throw std::invalid_argument("count_irreducibles: n must be >= 1");
  int64_t total = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    int64_t power = 1;
    for (int i = 0; i < n / d; ++i) power *= q;
    total += mobius(d) * power;
  }
  return total / n;
}

std::vector<Poly> irreducibles(int64_t q, int n, int64_t guardrail) {
  std::vector<Poly> out;
  out.reserve(static_cast<size_t>(count_irreducibles(q, n)));
  for_each_monic(q, n, guardrail, [&](const Poly& f) {
    if (is_irreducible(f)) out.push_back(f);
  });
  return out;
}

}  // namespace ffvar
