// Truncated power series with exact rational coefficients.
//
// RatSeries: dense univariate series truncated at a fixed order (coefficient
// of x^n kept for n <= order).  BiSeries: dense bivariate variant used by the
// two-variable matrix-integral expansions.  All arithmetic is exact.

#pragma once

#include <vector>

#include "ffvar/bigint.hpp"
#include "ffvar/errors.hpp"

namespace ffvar {

class RatSeries {
 public:
  explicit RatSeries(int order) : c_(order + 1, BigRat(0)) {}

  static RatSeries one(int order) {
    RatSeries s(order);
    s.c_[0] = 1;
    return s;
  }

  // c * x^k
  static RatSeries monomial(int order, const BigRat& c, int k) {
    RatSeries s(order);
    if (k <= order) s.c_[k] = c;
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const BigRat& operator[](int n) const { return c_.at(n); }
  BigRat& at(int n) { return c_.at(n); }

  RatSeries operator+(const RatSeries& o) const {
    RatSeries r(order());
    for (int n = 0; n <= order(); ++n) r.c_[n] = c_[n] + o.c_.at(n);
    return r;
  }

  RatSeries operator-(const RatSeries& o) const {
    RatSeries r(order());
    for (int n = 0; n <= order(); ++n) r.c_[n] = c_[n] - o.c_.at(n);
    return r;
  }

  RatSeries operator*(const RatSeries& o) const {
    RatSeries r(order());
    for (int i = 0; i <= order(); ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; i + j <= order(); ++j) {
        if (o.c_[j] == 0) continue;
        r.c_[i + j] += c_[i] * o.c_[j];
      }
    }
    return r;
  }

  RatSeries scaled(const BigRat& s) const {
    RatSeries r(order());
    for (int n = 0; n <= order(); ++n) r.c_[n] = c_[n] * s;
    return r;
  }

  // series division; divisor must have nonzero constant term
  RatSeries operator/(const RatSeries& d) const {
    if (d.c_[0] == 0) throw WindowError("RatSeries: division by series with zero constant term");
    RatSeries r(order());
    for (int n = 0; n <= order(); ++n) {
      BigRat acc = c_[n];
      for (int j = 1; j <= n; ++j) acc -= d.c_[j] * r.c_[n - j];
      r.c_[n] = acc / d.c_[0];
    }
    return r;
  }

  RatSeries pow(int e) const {
    RatSeries r = one(order());
    RatSeries b = *this;
    while (e) {
      if (e & 1) r = r * b;
      if (e >>= 1) b = b * b;
    }
    return r;
  }

  // x * d/dx
  RatSeries x_dx() const {
    RatSeries r(order());
    for (int n = 0; n <= order(); ++n) r.c_[n] = c_[n] * n;
    return r;
  }

 private:
  std::vector<BigRat> c_;
};

// geometric series 1/(1 - c x^k), k >= 1
inline RatSeries geometric(int order, const BigRat& c, int k) {
  RatSeries s(order);
  BigRat p = 1;
  for (int n = 0; n <= order; n += k) {
    s.at(n) = p;
    p *= c;
  }
  return s;
}

// ----------------------------------------------------------------------
// bivariate series, truncated at (order1, order2) per variable
// ----------------------------------------------------------------------

class BiSeries {
 public:
  BiSeries(int order1, int order2)
      : o1_(order1), o2_(order2), c_(static_cast<size_t>((order1 + 1) * (order2 + 1)), BigRat(0)) {}

  static BiSeries one(int o1, int o2) {
    BiSeries s(o1, o2);
    s.ref(0, 0) = 1;
    return s;
  }

  static BiSeries monomial(int o1, int o2, const BigRat& c, int e1, int e2) {
    BiSeries s(o1, o2);
    if (e1 <= o1 && e2 <= o2) s.ref(e1, e2) = c;
    return s;
  }

  int order1() const { return o1_; }
  int order2() const { return o2_; }
  const BigRat& get(int i, int j) const { return c_[idx(i, j)]; }
  BigRat& ref(int i, int j) { return c_[idx(i, j)]; }

  BiSeries operator+(const BiSeries& o) const {
    BiSeries r(o1_, o2_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
  }

  BiSeries operator-(const BiSeries& o) const {
    BiSeries r(o1_, o2_);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] - o.c_[k];
    return r;
  }

  BiSeries operator*(const BiSeries& o) const {
    BiSeries r(o1_, o2_);
    for (int i1 = 0; i1 <= o1_; ++i1)
      for (int j1 = 0; j1 <= o2_; ++j1) {
        const BigRat& a = get(i1, j1);
        if (a == 0) continue;
        for (int i2 = 0; i1 + i2 <= o1_; ++i2)
          for (int j2 = 0; j1 + j2 <= o2_; ++j2) {
            const BigRat& b = o.get(i2, j2);
            if (b == 0) continue;
            r.ref(i1 + i2, j1 + j2) += a * b;
          }
      }
    return r;
  }

  // multiply by 1/(1 - c x1^{e1} x2^{e2}), (e1, e2) != (0, 0):
  // recurrence r[i][j] = this[i][j] + c * r[i-e1][j-e2]
  BiSeries divide_one_minus(const BigRat& c, int e1, int e2) const {
    BiSeries r(o1_, o2_);
    for (int i = 0; i <= o1_; ++i)
      for (int j = 0; j <= o2_; ++j) {
        BigRat acc = get(i, j);
        if (i >= e1 && j >= e2 && (e1 || e2)) acc += c * r.get(i - e1, j - e2);
        r.ref(i, j) = acc;
      }
    return r;
  }

 private:
  int o1_, o2_;
  std::vector<BigRat> c_;
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * (o2_ + 1) + j; }
};

}  // namespace ffvar
