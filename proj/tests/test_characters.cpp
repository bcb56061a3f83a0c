#include "doctest.h"

#include <complex>

#include "ffvar/characters.hpp"
#include "ffvar/cyclotomic.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/poly.hpp"

using namespace ffvar;

TEST_CASE("quadratic symbol: Euler criterion agrees with reciprocity evaluation") {
  for (int64_t q : {5L, 13L}) {
    std::vector<Poly> mods = irreducibles(q, 3);
    mods.resize(4);  // a few irreducible cubics suffice for the cross-check
    for (const Poly& P : mods) {
      for (int n = 1; n <= 3; ++n) {
        // sweep a slice of monic f of degree n
        int64_t limit = 1;
        for (int i = 0; i < n; ++i) limit *= q;
        for (int64_t idx = 0; idx < limit; idx += (q == 5 ? 1 : 7)) {
          std::vector<int64_t> c(n + 1, 0);
          int64_t t = idx;
          for (int i = 0; i < n; ++i) {
            c[i] = t % q;
            t /= q;
          }
          c[n] = 1;
          Poly f(q, c);
          CHECK(jacobi_euler(f, P) == jacobi_reciprocity(f, P));
        }
      }
    }
  }
}

TEST_CASE("quadratic symbol takes value 1 on squares coprime to the modulus") {
  const int64_t q = 5;
  Poly P = irreducibles(q, 3).front();
  for (int64_t a = 1; a < q; ++a) {
    Poly g(q, {a, 1});
    Poly g2 = g * g;
    if ((g2 % P).is_zero()) continue;
    CHECK(jacobi(g2, P) == 1);
  }
}

TEST_CASE("root-of-unity tallies: ring operations and the single rounding site") {
  ExpTally a(4);  // Z[i]
  a.add(0, BigInt(3));
  a.add(1, BigInt(2));  // 3 + 2i
  CHECK(a.norm_squared().to_integer() == 13);

  std::complex<double> z = a.to_complex();
  CHECK(std::abs(z - std::complex<double>(3.0, 2.0)) < 1e-12);

  // zeta_6 - zeta_6^2 = 1 exactly, so 1 + zeta_6 - zeta_6^2 = 2 and the
  // canonical form certifies a rational integer despite nonzero raw tallies
  ExpTally c(6);
  c.add(0, BigInt(1));
  c.add(1, BigInt(1));
  c.add(2, BigInt(-1));
  CHECK(c.to_integer() == BigInt(2));
  CHECK(c.norm_squared().to_integer() == BigInt(4));

  // a full orbit of roots of unity cancels algebraically
  ExpTally orbit(5);
  for (int k = 0; k < 5; ++k) orbit.add(k, BigInt(7));
  CHECK(orbit.is_zero_algebraic());
  CHECK_FALSE(orbit.is_zero());
}
