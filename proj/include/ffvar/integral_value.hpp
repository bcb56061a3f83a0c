// Result of a matrix-integral evaluation.
//
// Either an exact rational (closed form, quadrature-free) or a Monte Carlo
// estimate with a standard error and the seed that produced it.  Closed
// forms with a restricted validity window still return their formula value
// outside the window but flag it with in_window = false; callers decide
// whether a flagged value is usable.

#pragma once

#include <cstdint>

#include "ffvar/bigint.hpp"

namespace ffvar {

struct IntegralValue {
  bool exact = true;
  BigRat value;          // meaningful when exact
  double estimate = 0;   // double view of value, or the Monte Carlo mean
  double std_error = 0;  // 0 for exact values
  uint64_t samples = 0;  // 0 for exact values
  uint64_t seed = 0;     // 0 for exact values
  bool in_window = true;

  static IntegralValue exact_value(const BigRat& v, bool window = true) {
    IntegralValue r;
    r.exact = true;
    r.value = v;
    r.estimate = static_cast<double>(v);
    r.in_window = window;
    return r;
  }

  static IntegralValue mc_estimate(double mean, double se, uint64_t n, uint64_t sd) {
    IntegralValue r;
    r.exact = false;
    r.estimate = mean;
    r.std_error = se;
    r.samples = n;
    r.seed = sd;
    return r;
  }
};

}  // namespace ffvar
