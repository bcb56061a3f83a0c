#include "doctest.h"

#include "ffvar/arith_weights.hpp"
#include "ffvar/bigint.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/poly.hpp"

using namespace ffvar;

TEST_CASE("divisor weights on prime powers and squarefree products") {
  const int64_t q = 5;
  Poly t = Poly::var(q);
  Poly p2 = t * t;                           // T^2
  CHECK(divisor_k(p2, 2) == 3);              // 1*T^2, T*T, T^2*1
  CHECK(divisor_k(p2, 3) == 6);              // compositions of 2 into 3 slots
  Poly sqfree = t * (t + Poly::one(q));      // two distinct primes
  CHECK(divisor_k(sqfree, 2) == 4);
  CHECK(divisor_k(Poly::one(q), 2) == 1);
}

TEST_CASE("prime-power weights vanish off prime powers and scale with degree") {
  const int64_t q = 5;
  Poly t = Poly::var(q);
  CHECK(vm(t) == 1);
  CHECK(vm(t * t) == 1);
  CHECK(vm(t * (t + Poly::one(q))) == 0);
  Poly cubic = irreducibles(q, 3).front();
  CHECK(vm(cubic) == 3);
  CHECK(vm(cubic * cubic) == 3);
}

TEST_CASE("total weight sums over all monics match the classical identities") {
  for (int64_t q : {3L, 5L}) {
    for (int n = 1; n <= 5; ++n) {
      BigInt qn = int_pow(BigInt(q), n);
      // prime polynomial theorem: the prime-power weight sums to q^n
      CHECK(total_vm_sum(q, n, 1) == qn);
      // the k = 1 divisor weight is identically 1
      CHECK(total_divisor_sum(q, n, 1) == qn);
      // sum of the two-fold divisor weight is (n+1) q^n
      CHECK(total_divisor_sum(q, n, 2) == (n + 1) * qn);
    }
  }
}

TEST_CASE("closed-form totals agree with brute-force enumeration") {
  const int64_t q = 3;
  for (int n = 1; n <= 4; ++n) {
    int64_t count = 1;
    for (int i = 0; i < n; ++i) count *= q;
    for (int k = 1; k <= 3; ++k) {
      BigInt dsum = 0, vsum = 0;
      for (int64_t idx = 0; idx < count; ++idx) {
        std::vector<int64_t> c(n + 1, 0);
        int64_t t = idx;
        for (int i = 0; i < n; ++i) {
          c[i] = t % q;
          t /= q;
        }
        c[n] = 1;
        Factorization fac = factor(Poly(q, c));
        dsum += divisor_k(fac, k);
        vsum += vm_k(fac, k);
      }
      CHECK(dsum == total_divisor_sum(q, n, k));
      CHECK(vsum == total_vm_sum(q, n, k));
    }
  }
}

TEST_CASE("coprime-restricted sums: combinatorial route equals the series route") {
  for (int64_t q : {3L, 5L}) {
    for (int deg_p = 1; deg_p <= 3; ++deg_p) {
      for (int n = 1; n <= 5; ++n) {
        for (int k = 1; k <= 3; ++k) {
          CHECK(total_divisor_sum_coprime_P(q, n, k, deg_p) ==
                total_divisor_sum_coprime_P_series(q, n, k, deg_p));
          if (deg_p % 2 == 1) {  // the closed form needs an odd prime degree
            CHECK(total_vm_sum_coprime_P(q, n, k, deg_p) ==
                  total_vm_sum_coprime_P_series(q, n, k, deg_p));
          }
        }
      }
    }
  }
}

TEST_CASE("weight dispatch selects the requested family") {
  const int64_t q = 5;
  Poly t = Poly::var(q);
  Factorization fac = factor(t * t);
  CHECK(weight_value(fac, Weight::divisor, 2) == divisor_k(fac, 2));
  CHECK(weight_value(fac, Weight::von_mangoldt, 2) == vm_k(fac, 2));
}
