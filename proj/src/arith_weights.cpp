#include "ffvar/arith_weights.hpp"

#include <functional>

namespace ffvar {

BigInt divisor_k(const Factorization& fac, int k) {
  if (k < 1) throw std::invalid_argument("divisor_k: k must be >= 1");
  BigInt r = 1;
  for (auto& [p, e] : fac.factors) r *= binomial(static_cast<int64_t>(e) + k - 1, k - 1);
  return r;
}

BigInt vm(const Factorization& fac) {
  if (fac.factors.size() != 1) return 0;
  return fac.factors[0].first.deg();
}

// k-fold convolution: vm_k(f) = sum over divisors g of f with f/g a prime
// power P^j of deg(P) * vm_{k-1}(g); recursion over the exponent vector
BigInt vm_k(const Factorization& fac, int k) {
  if (k < 1) throw std::invalid_argument("vm_k: k must be >= 1");
  if (k == 1) return vm(fac);
  const size_t np = fac.factors.size();
  std::vector<int> exps(np);
  for (size_t i = 0; i < np; ++i) exps[i] = fac.factors[i].second;

  std::function<BigInt(std::vector<int>&, int)> rec = [&](std::vector<int>& e, int kk) -> BigInt {
    if (kk == 0) {
      for (int x : e)
        if (x) return 0;
      return 1;
    }
    BigInt total = 0;
    for (size_t i = 0; i < np; ++i) {
      const int64_t dp = fac.factors[i].first.deg();
      const int ei = e[i];
      for (int j = 1; j <= ei; ++j) {
        e[i] = ei - j;  // peel the prime power P_i^j
        total += dp * rec(e, kk - 1);
      }
      e[i] = ei;
    }
    return total;
  };
  return rec(exps, k);
}

BigInt total_divisor_sum(int64_t q, int n, int k) {
  if (n < 0) return 0;
  return int_pow(q, n) * binomial(static_cast<int64_t>(n) + k - 1, k - 1);
}

BigInt total_divisor_sum_coprime_P(int64_t q, int n, int k, int deg_p) {
  if (n < 0) return 0;
  BigInt total = 0;
  for (int m = 0; m <= k; ++m) {
    const int64_t j = static_cast<int64_t>(n) - static_cast<int64_t>(deg_p) * m;
    if (j < 0) continue;
    BigInt term = binomial(static_cast<int64_t>(k), m) *
                  binomial(-static_cast<int64_t>(k), j) * int_pow(q, j);
    // (1-qu)^{-k} contributes (-1)^j and (1-u^{deg P})^k contributes (-1)^m
    if ((m + j) % 2) term = -term;
    total += term;
  }
  return total;
}

BigInt total_vm_sum(int64_t q, int n, int k) {
  if (n < k) return 0;
  return binomial(static_cast<int64_t>(n) - 1, k - 1) * int_pow(q, n);
}

BigInt total_vm_sum_coprime_P(int64_t q, int n, int k, int deg_p) {
  if (deg_p % 2 == 0)
    throw WindowError("total_vm_sum_coprime_P: closed form requires odd deg P; use the series oracle");
  const int64_t d = deg_p;
  BigInt total = 0;
  for (int j = 0; j <= k; ++j) {
    BigInt inner = 0;
    for (int m = 0;; ++m) {
      const int64_t spent = (static_cast<int64_t>(k - j) + m) * d + j;
      if (spent > n) break;
      const int64_t t = n - spent;  // exponent left for the q-power factor
      BigInt term = binomial(static_cast<int64_t>(j) - k, m) *
                    binomial(-static_cast<int64_t>(j), t) * int_pow(q, n - (k - j + m) * d);
      if ((n - j) % 2) term = -term;
      inner += term;
    }
    total += binomial(static_cast<int64_t>(k), j) * int_pow(BigInt(d), k - j) * inner;
  }
  return total;
}

BigInt total_vm_sum_unit_coprime(int64_t q, int n, int k) {
  if (n < k) return 0;
  BigInt total = 0;
  for (int64_t m = 0; m <= n - k; ++m) {
    BigInt term = binomial(-static_cast<int64_t>(k), m) *
                  binomial(-static_cast<int64_t>(k), n - k - m) * int_pow(q, n - k - m);
    if ((n - k) % 2) term = -term;
    total += term;
  }
  return total * int_pow(BigInt(q - 1), k);
}

namespace {

BigInt series_coefficient_as_int(const RatSeries& s, int n) {
  const BigRat& c = s[n];
  if (boost::multiprecision::denominator(c) != 1)
    throw IdentityError("generating-function coefficient is not an integer");
  return boost::multiprecision::numerator(c);
}

}  // namespace

BigInt total_divisor_sum_coprime_P_series(int64_t q, int n, int k, int deg_p) {
  // ((1 - u^d) / (1 - q u))^k
  RatSeries num = RatSeries::one(n) - RatSeries::monomial(n, 1, deg_p);
  RatSeries s = (num * geometric(n, q, 1)).pow(k);
  return series_coefficient_as_int(s, n);
}

BigInt total_vm_sum_coprime_P_series(int64_t q, int n, int k, int deg_p) {
  // (q u / (1 - q u)  -  d u^d / (1 - u^d))^k
  RatSeries full = RatSeries::monomial(n, q, 1) * geometric(n, q, 1);
  RatSeries removed = RatSeries::monomial(n, deg_p, deg_p) * geometric(n, 1, deg_p);
  RatSeries s = (full - removed).pow(k);
  return series_coefficient_as_int(s, n);
}

}  // namespace ffvar
