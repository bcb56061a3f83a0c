#include "ffvar/characters.hpp"

#include <algorithm>
#include <map>

#include "ffvar/errors.hpp"

namespace ffvar {

int legendre_const(int64_t c, int64_t q) {
  c %= q;
  if (c < 0) c += q;
  if (c == 0) return 0;
  const int64_t r = powm(c, static_cast<uint64_t>((q - 1) / 2), q);
  return r == 1 ? 1 : -1;
}

int jacobi_euler(const Poly& f, const Poly& P) {
  const int64_t q = P.q();
  if (P.deg() < 1 || !P.is_monic())
    throw std::invalid_argument("jacobi_euler: modulus must be monic of positive degree");
  const Poly r = f % P;
  if (r.is_zero()) return 0;
  // exponent (q^d - 1)/2 fits in 64 bits for every supported field size
  unsigned __int128 e = 1;
  for (int i = 0; i < P.deg(); ++i) e *= static_cast<uint64_t>(q);
  e = (e - 1) / 2;
  if (e > static_cast<unsigned __int128>(UINT64_MAX))
    throw GuardrailError("jacobi_euler: modulus norm too large");
  const Poly v = Poly::powmod(r, static_cast<uint64_t>(e), P);
  if (v.is_one()) return 1;
  if (v.deg() == 0 && v.coeff(0) == q - 1) return -1;
  throw IdentityError("jacobi_euler: Euler criterion did not land on +-1 (modulus not prime?)");
}

int jacobi_reciprocity(const Poly& f, const Poly& Q) {
  const int64_t q = Q.q();
  if (q % 4 != 1)
    throw WindowError("jacobi_reciprocity: needs q = 1 mod 4 for symbol symmetry");
  if (Q.deg() < 1 || !Q.is_monic())
    throw std::invalid_argument("jacobi_reciprocity: modulus must be monic of positive degree");
  Poly a = f, m = Q;
  int result = 1;
  for (;;) {
    a = a % m;
    if (a.is_zero()) return 0;
    // split the content: (c * a1 / m) = (c/m) (a1/m), (c/m) = legendre(c)^deg m
    const int64_t c = a.leading();
    if (m.deg() % 2 == 1) result *= legendre_const(c, q);
    a = a.monic();
    if (a.is_one()) return result;
    std::swap(a, m);  // (a/m) = (m/a) for monic coprime a, m when q = 1 mod 4
  }
}

// ----------------------------------------------------------------------
// generic abelian structure
// ----------------------------------------------------------------------

const std::vector<int64_t>& GroupStructure::dlog_of(const Poly& x) const {
  auto it = dlog.find(x);
  if (it == dlog.end()) throw std::invalid_argument("GroupStructure: element not in group");
  return it->second;
}

namespace {

Poly group_pow(const Poly& x, int64_t e, const GroupMul& mul, const Poly& id) {
  Poly r = id;
  Poly b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    if (e >>= 1) b = mul(b, b);
  }
  return r;
}

int64_t element_order(const Poly& x, const GroupMul& mul, const Poly& id) {
  Poly p = x;
  int64_t o = 1;
  while (!(p == id)) {
    p = mul(p, x);
    ++o;
  }
  return o;
}

}  // namespace

GroupStructure abelian_structure(const std::vector<Poly>& elements, const GroupMul& mul,
                                 const Poly& identity) {
  GroupStructure s;
  s.size = static_cast<int64_t>(elements.size());
  if (s.size == 1) {
    s.dlog[identity] = {};
    return s;
  }

  // generator of maximal order; in an abelian group this order is the exponent
  Poly g = identity;
  int64_t max_order = 1;
  for (const Poly& x : elements) {
    int64_t o = element_order(x, mul, identity);
    if (o > max_order) {
      max_order = o;
      g = x;
    }
  }
  const int64_t e = max_order;

  // power table of <g>
  std::unordered_map<Poly, int64_t, PolyHash> glog;
  {
    Poly p = identity;
    for (int64_t j = 0; j < e; ++j) {
      glog[p] = j;
      p = mul(p, g);
    }
  }

  std::vector<Poly> gens = {g};
  std::vector<int64_t> orders = {e};

  if (e < s.size) {
    // canonical representative per coset of <g>: the minimal member
    std::unordered_map<Poly, Poly, PolyHash> rep;
    std::vector<Poly> quotient;
    for (const Poly& x : elements) {
      if (rep.count(x)) continue;
      std::vector<Poly> coset;
      Poly p = x;
      Poly best = x;
      for (int64_t j = 0; j < e; ++j) {
        coset.push_back(p);
        if (p < best) best = p;
        p = mul(p, g);
      }
      for (const Poly& c : coset) rep.emplace(c, best);
      quotient.push_back(best);
    }
    std::sort(quotient.begin(), quotient.end());

    GroupMul qmul = [&](const Poly& a, const Poly& b) { return rep.at(mul(a, b)); };
    GroupStructure qs = abelian_structure(quotient, qmul, rep.at(identity));

    // lift quotient generators, correcting against g so lifts have exact order
    for (size_t i = 0; i < qs.generators.size(); ++i) {
      const Poly& lift = qs.generators[i];
      const int64_t t = qs.orders[i];
      const Poly excess = group_pow(lift, t, mul, identity);  // lies in <g>
      auto it = glog.find(excess);
      if (it == glog.end()) throw IdentityError("abelian_structure: lift power escaped <g>");
      const int64_t sidx = it->second;
      if (sidx % t != 0) throw IdentityError("abelian_structure: non-divisible lift correction");
      const Poly fix = group_pow(g, (e - sidx / t) % e, mul, identity);
      gens.push_back(mul(lift, fix));
      orders.push_back(t);
    }
  }

  // full discrete-log table by mixed-radix enumeration over the generators
  s.generators = gens;
  s.orders = orders;
  s.exponent = orders[0];
  s.dlog.reserve(static_cast<size_t>(s.size) * 2);
  std::vector<int64_t> vec(gens.size(), 0);
  Poly cur = identity;
  std::vector<Poly> prefix(gens.size(), identity);  // cur = prefix-product state
  // odometer over exponent vectors
  int64_t total = 1;
  for (int64_t o : orders) total *= o;
  if (total != s.size) throw IdentityError("abelian_structure: generator orders do not fill the group");
  for (int64_t idx = 0;; ++idx) {
    if (!s.dlog.emplace(cur, vec).second)
      throw IdentityError("abelian_structure: duplicate element in decomposition");
    if (idx + 1 == total) break;
    // increment odometer, updating the running product
    size_t i = 0;
    while (true) {
      vec[i] += 1;
      if (vec[i] < orders[i]) {
        cur = mul(cur, gens[i]);
        break;
      }
      vec[i] = 0;
      ++i;  // carry; recompute cur below
    }
    if (i > 0) {
      // carry happened: rebuild cur from scratch (rare; total cost O(n log n))
      cur = identity;
      for (size_t j = 0; j < gens.size(); ++j)
        if (vec[j]) cur = mul(cur, group_pow(gens[j], vec[j], mul, identity));
    }
  }
  return s;
}

// ----------------------------------------------------------------------
// CharGroup
// ----------------------------------------------------------------------

CharGroup::CharGroup(int64_t q, const Poly& modulus, int64_t guardrail)
    : q_(q), modulus_(modulus) {
  if (modulus.q() != q) throw std::invalid_argument("CharGroup: field mismatch");
  if (modulus.deg() < 1 || !modulus.is_monic())
    throw std::invalid_argument("CharGroup: modulus must be monic of positive degree");
  const int64_t residues = monic_count(q, modulus.deg(), guardrail);  // q^deg residues
  if (residues > 2'000'000)
    throw GuardrailError("CharGroup: unit-group table would exceed the group guardrail");

  for (int64_t m = 0; m < residues; ++m) {
    Poly r = residue_at(q, modulus.deg(), m);
    if (Poly::gcd(r, modulus).deg() == 0 && !r.is_zero()) units_.push_back(r);
  }
  GroupMul mul = [this](const Poly& a, const Poly& b) { return (a * b) % modulus_; };
  structure_ = abelian_structure(units_, mul, Poly::one(q));

  for (auto& [p, e] : factor(modulus).factors) prime_divisors_.push_back(p);
}

std::vector<int64_t> character_tuple(const GroupStructure& s, int64_t index) {
  if (index < 0 || index >= s.size)
    throw std::invalid_argument("character_tuple: index out of range");
  std::vector<int64_t> t(s.orders.size());
  int64_t m = index;
  for (size_t i = 0; i < s.orders.size(); ++i) {
    t[i] = m % s.orders[i];
    m /= s.orders[i];
  }
  return t;
}

int64_t character_exponent(const GroupStructure& s, const std::vector<int64_t>& t, const Poly& x) {
  const std::vector<int64_t>& a = s.dlog_of(x);
  const int64_t e = s.exponent;
  int64_t acc = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    // chi(g_i) = zeta_E^{t_i * (E / o_i)}
    const int64_t step = e / s.orders[i];
    acc = (acc + (t[i] * a[i]) % e * step) % e;
  }
  return acc;
}

CharGroup::Char CharGroup::character(int64_t index) const {
  if (index < 0 || index >= char_count())
    throw std::invalid_argument("CharGroup::character: index out of range");
  Char chi;
  chi.index = index;
  chi.t = character_tuple(structure_, index);
  return chi;
}

int64_t CharGroup::eval_unit(const Char& chi, const Poly& unit_residue) const {
  return character_exponent(structure_, chi.t, unit_residue);
}

bool CharGroup::eval(const Char& chi, const Poly& f, int64_t* exponent) const {
  const Poly r = f % modulus_;
  if (r.is_zero() || Poly::gcd(r, modulus_).deg() != 0) return false;
  *exponent = eval_unit(chi, r);
  return true;
}

bool CharGroup::is_even(const Char& chi) const {
  for (int64_t c = 2; c < q_; ++c)
    if (eval_unit(chi, Poly::constant(q_, c)) != 0) return false;
  return true;
}

int64_t CharGroup::even_char_count() const {
  int64_t n = 0;
  for (int64_t i = 0; i < char_count(); ++i)
    if (is_even(character(i))) ++n;
  return n;
}

bool CharGroup::is_primitive(const Char& chi) const {
  // chi has conductor Q iff it is nontrivial on the kernel of reduction to
  // Q/P for every prime P | Q
  for (const Poly& p : prime_divisors_) {
    const Poly smaller = modulus_ / p;
    bool nontrivial_on_kernel = false;
    for (const Poly& u : units_) {
      if (!((u % smaller) == (Poly::one(q_) % smaller))) continue;
      if (eval_unit(chi, u) != 0) {
        nontrivial_on_kernel = true;
        break;
      }
    }
    if (!nontrivial_on_kernel) return false;
  }
  return true;
}

}  // namespace ffvar
