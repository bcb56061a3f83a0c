// Exact arithmetic in Z[zeta_E] via exponent tallies.
//
// A character sum  sum_f w(f) chi(f)  is stored as an integer tally vector
// indexed by the exponent of chi(f) as a power of a fixed primitive E-th root
// of unity.  Products and conjugates act on exponents; a sum that is known to
// be rational is certified and extracted exactly by reduction modulo the
// E-th cyclotomic polynomial.  Conversion to complex doubles happens in one
// place only (to_complex).

#pragma once

#include <complex>
#include <vector>

#include "ffvar/bigint.hpp"
#include "ffvar/errors.hpp"

namespace ffvar {

// coefficients of the n-th cyclotomic polynomial (exact, ascending)
std::vector<BigInt> cyclotomic_polynomial(int n);

class ExpTally {
 public:
  explicit ExpTally(int order) : e_(order), t_(order, BigInt(0)) {}

  int order() const { return e_; }
  const BigInt& tally(int k) const { return t_[k]; }

  void add(int exponent, const BigInt& weight) {
    int k = exponent % e_;
    if (k < 0) k += e_;
    t_[k] += weight;
  }

  bool is_zero() const {
    for (auto& x : t_)
      if (x != 0) return false;
    return true;
  }

  ExpTally conj() const {
    ExpTally r(e_);
    for (int k = 0; k < e_; ++k) r.t_[(e_ - k) % e_] = t_[k];
    return r;
  }

  ExpTally operator*(const ExpTally& o) const {
    ExpTally r(e_);
    for (int i = 0; i < e_; ++i) {
      if (t_[i] == 0) continue;
      for (int j = 0; j < e_; ++j) {
        if (o.t_[j] == 0) continue;
        r.t_[(i + j) % e_] += t_[i] * o.t_[j];
      }
    }
    return r;
  }

  ExpTally operator+(const ExpTally& o) const {
    ExpTally r(e_);
    for (int k = 0; k < e_; ++k) r.t_[k] = t_[k] + o.t_[k];
    return r;
  }

  ExpTally operator-(const ExpTally& o) const {
    ExpTally r(e_);
    for (int k = 0; k < e_; ++k) r.t_[k] = t_[k] - o.t_[k];
    return r;
  }

  ExpTally scaled(const BigInt& s) const {
    ExpTally r(e_);
    for (int k = 0; k < e_; ++k) r.t_[k] = t_[k] * s;
    return r;
  }

  // |z|^2 = z * conj(z), exact
  ExpTally norm_squared() const { return *this * conj(); }

  // canonical coordinates in the power basis of Z[zeta_E]: the remainder of
  // the tally polynomial modulo the E-th cyclotomic polynomial
  std::vector<BigInt> canonical() const;

  bool equals(const ExpTally& o) const { return canonical() == o.canonical(); }

  // zero as an algebraic number (raw tallies may cancel, e.g. a full orbit
  // of roots of unity)
  bool is_zero_algebraic() const {
    for (const BigInt& x : canonical())
      if (x != 0) return false;
    return true;
  }

  // Certify the element is a rational integer and return it: the canonical
  // form must be a constant.
  BigInt to_integer() const;

  // the single rounding site
  std::complex<double> to_complex() const;

 private:
  int e_;
  std::vector<BigInt> t_;
};

}  // namespace ffvar
