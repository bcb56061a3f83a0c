// Dense univariate polynomials over F_q.
//
// Canonical form: coefficients lowest-first with no trailing zeros; the zero
// polynomial is the empty vector and has degree -1.  Every operation returns
// canonical output and checks that operands share the same field.
//
// The same type serves both polynomial rings used by the statistics: the base
// ring F_q[T] and the auxiliary ring F_q[S] (where sigma flips S -> -S).  The
// variable letter is purely presentational.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ffvar/errors.hpp"
#include "ffvar/field.hpp"

namespace ffvar {

class Poly {
 public:
  Poly() : q_(0) {}
  explicit Poly(int64_t q) : q_(q) {}
  Poly(int64_t q, std::vector<int64_t> coeffs) : q_(q), c_(std::move(coeffs)) {
    for (auto& x : c_) {
      x %= q_;
      if (x < 0) x += q_;
    }
    strip();
  }

  static Poly zero(int64_t q) { return Poly(q); }
  static Poly one(int64_t q) { return Poly(q, {1}); }
  static Poly constant(int64_t q, int64_t c) { return Poly(q, {c}); }
  // The monomial T (or S; the letter is presentational).
  static Poly var(int64_t q) { return Poly(q, {0, 1}); }

  int64_t q() const { return q_; }
  // degree; -1 for the zero polynomial
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  int64_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
  }
  int64_t leading() const { return c_.empty() ? 0 : c_.back(); }
  int64_t constant_term() const { return coeff(0); }
  const std::vector<int64_t>& coeffs() const { return c_; }

  bool operator==(const Poly& o) const { return q_ == o.q_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  // total order (by degree, then coefficients high to low); used for map keys
  bool operator<(const Poly& o) const {
    if (deg() != o.deg()) return deg() < o.deg();
    for (int i = deg(); i >= 0; --i)
      if (coeff(i) != o.coeff(i)) return coeff(i) < o.coeff(i);
    return false;
  }

  Poly operator+(const Poly& o) const {
    check_field(o);
    std::vector<int64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = addm(coeff(i), o.coeff(i), q_);
    return Poly::raw(q_, std::move(r));
  }

  Poly operator-(const Poly& o) const {
    check_field(o);
    std::vector<int64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = subm(coeff(i), o.coeff(i), q_);
    return Poly::raw(q_, std::move(r));
  }

  Poly operator*(const Poly& o) const {
    check_field(o);
    if (is_zero() || o.is_zero()) return Poly(q_);
    std::vector<int64_t> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = (r[i + j] + c_[i] * o.c_[j]) % q_;
    }
    return Poly::raw(q_, std::move(r));
  }

  Poly scaled(int64_t s) const {
    s %= q_;
    if (s < 0) s += q_;
    std::vector<int64_t> r(c_);
    for (auto& x : r) x = mulm(x, s, q_);
    return Poly::raw(q_, std::move(r));
  }

  Poly operator-() const { return scaled(q_ - 1); }

  // multiply by T^k
  Poly shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<int64_t> r(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), r.begin() + k);
    return Poly::raw(q_, std::move(r));
  }

  // quotient and remainder; divisor must be nonzero
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    check_field(d);
    if (d.is_zero()) throw std::domain_error("Poly::divmod: division by zero");
    if (deg() < d.deg()) return {Poly(q_), *this};
    std::vector<int64_t> rem(c_);
    std::vector<int64_t> quo(deg() - d.deg() + 1, 0);
    const int64_t lead_inv = invm(d.leading(), q_);
    for (int i = deg(); i >= d.deg(); --i) {
      int64_t f = mulm(rem[i], lead_inv, q_);
      if (f == 0) continue;
      quo[i - d.deg()] = f;
      for (int j = 0; j <= d.deg(); ++j)
        rem[i - d.deg() + j] = subm(rem[i - d.deg() + j], mulm(f, d.coeff(j), q_), q_);
    }
    return {Poly::raw(q_, std::move(quo)), Poly::raw(q_, std::move(rem))};
  }

  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  // monic gcd; gcd(0,0) = 0
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a % b;
      a = std::move(b);
      b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
  }

  Poly monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(invm(leading(), q_));
  }

  Poly derivative() const {
    if (deg() <= 0) return Poly(q_);
    std::vector<int64_t> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = mulm(c_[i], static_cast<int64_t>(i % q_), q_);
    return Poly::raw(q_, std::move(r));
  }

  int64_t eval(int64_t x) const {
    x %= q_;
    if (x < 0) x += q_;
    int64_t r = 0;
    for (int i = deg(); i >= 0; --i) r = (r * x + c_[i]) % q_;
    return r;
  }

  // f^e mod m (binary exponentiation); m must have positive degree
  static Poly powmod(Poly f, uint64_t e, const Poly& m) {
    if (m.deg() < 1) throw std::domain_error("Poly::powmod: modulus must have degree >= 1");
    Poly r = Poly::one(f.q());
    f = f % m;
    while (e) {
      if (e & 1) r = (r * f) % m;
      f = (f * f) % m;
      e >>= 1;
    }
    return r;
  }

  // small plain power
  Poly pow(int e) const {
    Poly r = Poly::one(q_);
    Poly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      if (e >>= 1) b = b * b;
    }
    return r;
  }

  // the involution f*(T) = T^deg(f) f(1/T): reversed coefficients.
  // Not monic in general; deg(f*) < deg(f) iff T | f.
  Poly star() const {
    std::vector<int64_t> r(c_.rbegin(), c_.rend());
    return Poly::raw(q_, std::move(r));
  }

  // sigma: S -> -S (negate odd coefficients); the conjugation of the
  // auxiliary ring
  Poly sigma() const {
    std::vector<int64_t> r(c_);
    for (size_t i = 1; i < r.size(); i += 2) r[i] = negm(r[i], q_);
    return Poly::raw(q_, std::move(r));
  }

  // text format: nonzero terms, descending exponents, coefficients in [1,q);
  // "c*T^e", with "c*" omitted when c == 1 and e > 0, "T" for e == 1,
  // bare "c" for e == 0; the zero polynomial prints "0".
  std::string to_string(char var = 'T') const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = deg(); i >= 0; --i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      if (i == 0) {
        s += std::to_string(c_[i]);
      } else {
        if (c_[i] != 1) {
          s += std::to_string(c_[i]);
          s += '*';
        }
        s += var;
        if (i != 1) {
          s += '^';
          s += std::to_string(i);
        }
      }
    }
    return s;
  }

  // Parse the text format above (either variable letter, optional explicit
  // "1*" and "^1"/"^0").  Coefficients must be nonnegative integers < q.
  static Poly parse(int64_t q, const std::string& text);

  size_t hash() const {
    size_t h = 0x9e3779b97f4a7c15ull ^ static_cast<size_t>(q_);
    for (int64_t x : c_) h = (h * 1099511628211ull) ^ static_cast<size_t>(x + 1);
    return h;
  }

 private:
  int64_t q_;
  std::vector<int64_t> c_;

  // construct from already-reduced coefficients
  static Poly raw(int64_t q, std::vector<int64_t> c) {
    Poly p(q);
    p.c_ = std::move(c);
    p.strip();
    return p;
  }

  void strip() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  void check_field(const Poly& o) const {
    if (q_ != o.q_) throw std::invalid_argument("Poly: mixed fields q=" + std::to_string(q_) +
                                                " and q=" + std::to_string(o.q_));
  }
};

struct PolyHash {
  size_t operator()(const Poly& p) const { return p.hash(); }
};

// ----------------------------------------------------------------------
// monic enumeration
// ----------------------------------------------------------------------

// number of monic polynomials of degree n, i.e. q^n (guardrail-checked)
inline int64_t monic_count(int64_t q, int n, int64_t guardrail) {
  int64_t count = 1;
  for (int i = 0; i < n; ++i) {
    count *= q;
    if (count > guardrail)
      throw GuardrailError("enumeration of q^" + std::to_string(n) + " monics exceeds guardrail " +
                           std::to_string(guardrail));
  }
  return count;
}

// The monic polynomial of degree n at enumeration index m in [0, q^n):
// coefficients c_0..c_{n-1} are the base-q digits of m (c_0 least
// significant), c_n = 1.  This fixed order makes every enumeration-based
// result byte-for-byte reproducible.
inline Poly monic_at(int64_t q, int n, int64_t m) {
  std::vector<int64_t> c(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    c[i] = m % q;
    m /= q;
  }
  c[n] = 1;
  return Poly(q, std::move(c));
}

// inverse of monic_at
inline int64_t monic_index(const Poly& f) {
  int64_t m = 0;
  for (int i = f.deg() - 1; i >= 0; --i) m = m * f.q() + f.coeff(i);
  return m;
}

// all residues of degree < n at index m in [0, q^n) (not necessarily monic)
inline Poly residue_at(int64_t q, int n, int64_t m) {
  std::vector<int64_t> c(n, 0);
  for (int i = 0; i < n; ++i) {
    c[i] = m % q;
    m /= q;
  }
  return Poly(q, std::move(c));
}

inline void for_each_monic(int64_t q, int n, int64_t guardrail,
                           const std::function<void(const Poly&)>& fn) {
  const int64_t count = monic_count(q, n, guardrail);
  for (int64_t m = 0; m < count; ++m) fn(monic_at(q, n, m));
}

}  // namespace ffvar
