#include "doctest.h"

#include <cmath>

#include "ffvar/factor.hpp"
#include "ffvar/lfunction.hpp"
#include "ffvar/poly.hpp"

using namespace ffvar;

TEST_CASE("quadratic L-polynomials for prime cubic moduli: degree, spectrum, bound") {
  const int64_t q = 5;
  for (const Poly& P : irreducibles(q, 3)) {
    LPolynomial l = l_polynomial_quadratic(P);
    CHECK(l.degree() == 2);  // genus 1 for a degree-3 squarefree modulus
    CHECK(l.c[0].to_integer() == 1);

    FrobeniusSpectrum spec = frobenius_spectrum(l, 0);
    CHECK(spec.dimension == 2);
    CHECK(spec.rh_residual < 1e-8);  // inverse roots on |u| = q^{-1/2}
  }
}

TEST_CASE("coefficient sums match L-power coefficients and spectral compositions") {
  const int64_t q = 5;
  // one prime modulus suffices here; the acceptance battery sweeps all of them
  Poly P = irreducibles(q, 3).front();
  LPolynomial l = l_polynomial_quadratic(P);
  CharEval chi = quadratic_char_eval(P);
  for (int k = 1; k <= 2; ++k) {
    for (int n = 1; n <= 4; ++n) {
      IdentityCheck sc = verify_secular_identity(q, n, k, l, chi, 0);
      CHECK(sc.exact_match);
      CHECK(sc.ok);
      IdentityCheck tr = verify_trace_identity(q, n, k, l, chi, 0);
      CHECK(tr.exact_match);
      CHECK(tr.ok);
    }
  }
}
