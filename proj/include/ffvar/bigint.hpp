// Exact integer/rational arithmetic aliases and small combinatorial helpers.
//
// Everything statistics-facing is exact: weights and tallies are BigInt,
// variances and means are BigRat.  Conversion to double happens only at
// report-rendering and root-finding sites.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace ffvar {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// binomial coefficient with integer (possibly negative) upper argument:
// binom(n, k) = n(n-1)...(n-k+1)/k!; zero for k < 0
inline BigInt binomial(int64_t n, int64_t k) {
  if (k < 0) return 0;
  BigInt r = 1;
  for (int64_t i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);  // exact: partial products of consecutive integers
  }
  return r;
}

inline BigInt binomial(const BigInt& n, int64_t k) {
  if (k < 0) return 0;
  BigInt r = 1;
  for (int64_t i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

inline BigInt factorial(int64_t n) {
  BigInt r = 1;
  for (int64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// (n)!! with the convention (-1)!! = 1; zero for negative even n
inline BigInt double_factorial(int64_t n) {
  if (n <= 0) return 1;
  BigInt r = 1;
  for (int64_t i = n; i >= 2; i -= 2) r *= i;
  return r;
}

inline BigInt int_pow(const BigInt& base, int64_t e) {
  BigInt r = 1;
  for (int64_t i = 0; i < e; ++i) r *= base;
  return r;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const BigRat& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const BigRat& x) { return static_cast<double>(x); }
inline double to_double(const BigInt& x) { return static_cast<double>(x); }

}  // namespace ffvar
