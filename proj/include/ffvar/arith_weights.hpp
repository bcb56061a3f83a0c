// Arithmetic weight functions and their exact total-sum closed forms.
//
// divisor_k: the k-fold divisor function, multiplicative with
//            d_k(P^e) = binom(e + k - 1, k - 1).
// vm:        the prime-power degree weight (deg P on P^e, else 0).
// vm_k:      its k-fold multiplicative convolution.
//
// The total sums over all monics of degree n -- plain, coprime to a fixed
// prime of degree d, or with nonzero constant term -- have exact closed
// forms from the generating functions; both the literal binomial forms and
// an independent exact series expansion are provided (they must agree).

#pragma once

#include <cstdint>

#include "ffvar/bigint.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/series.hpp"

namespace ffvar {

BigInt divisor_k(const Factorization& fac, int k);
BigInt vm(const Factorization& fac);
BigInt vm_k(const Factorization& fac, int k);

inline BigInt divisor_k(const Poly& f, int k) { return divisor_k(factor(f), k); }
inline BigInt vm(const Poly& f) { return vm(factor(f)); }
inline BigInt vm_k(const Poly& f, int k) { return vm_k(factor(f), k); }

// which weight a statistic carries
enum class Weight { divisor, von_mangoldt };

inline BigInt weight_value(const Factorization& fac, Weight w, int k) {
  return w == Weight::divisor ? divisor_k(fac, k) : vm_k(fac, k);
}

// sum of d_k over all monics of degree n:  q^n binom(n + k - 1, k - 1)
BigInt total_divisor_sum(int64_t q, int n, int k);

// sum of d_k over monics of degree n coprime to a fixed prime of degree d:
//   (-1)^n sum_{m=0}^{k} binom(k,m) binom(-k, n - d m) q^{n - d m}
BigInt total_divisor_sum_coprime_P(int64_t q, int n, int k, int deg_p);

// sum of vm_k over all monics of degree n:  binom(n-1, k-1) q^n
BigInt total_vm_sum(int64_t q, int n, int k);

// sum of vm_k over monics of degree n coprime to a fixed prime of odd
// degree d (the double-binomial closed form)
BigInt total_vm_sum_coprime_P(int64_t q, int n, int k, int deg_p);

// sum of vm_k over monics of degree n with nonzero constant term:
//   (q-1)^k sum_m binom(-k,m) binom(-k, n-k-m) (-1)^{n-k} q^{n-k-m}
BigInt total_vm_sum_unit_coprime(int64_t q, int n, int k);

// independent oracles: exact series expansion of the generating functions
BigInt total_divisor_sum_coprime_P_series(int64_t q, int n, int k, int deg_p);
BigInt total_vm_sum_coprime_P_series(int64_t q, int n, int k, int deg_p);

}  // namespace ffvar
