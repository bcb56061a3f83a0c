#include "doctest.h"

#include <cmath>
#include <complex>

#include "ffvar/errors.hpp"
#include "ffvar/exact_rmt.hpp"
#include "ffvar/haar.hpp"

using namespace ffvar;

TEST_CASE("eigenangle quadrature reproduces exact moments to tight tolerance") {
  // squared two-fold secular sum at weight 2 over the rank-one symplectic group
  IntegralValue v =
      weyl_quadrature(MatrixGroup::symplectic, 1, CompositionFunctional{SymbolKind::secular, 2, 2, true});
  CHECK(std::abs(v.estimate - 10.0) < 1e-8);

  // squared traces over the unitary group: E|Tr U^n|^2 = min(n, N)
  for (int64_t N = 1; N <= 3; ++N) {
    for (int64_t n = 1; n <= 2 * N + 1; ++n) {
      IntegralValue t =
          weyl_quadrature(MatrixGroup::unitary, N, CompositionFunctional{SymbolKind::trace, 1, n, true});
      CHECK(std::abs(t.estimate - static_cast<double>(std::min(n, N))) < 1e-8);
    }
  }

  // diagonal symplectic trace pairs at rank <= 3
  for (int64_t N = 1; N <= 3; ++N) {
    for (int64_t n = 1; n <= 2 * N + 2; ++n) {
      IntegralValue t =
          weyl_quadrature(MatrixGroup::symplectic, N, CompositionFunctional{SymbolKind::trace, 1, n, true});
      CHECK(std::abs(t.estimate - to_double(symplectic_trace_pair(n, n, N))) < 1e-8);
    }
  }
}

TEST_CASE("quadrature guardrail: rank above three is refused") {
  CHECK_THROWS_AS(
      weyl_quadrature(MatrixGroup::unitary, 4, CompositionFunctional{SymbolKind::trace, 1, 1, true}),
      GuardrailError);
}

TEST_CASE("Monte Carlo sampling is reproducible and lands near exact targets") {
  CompositionFunctional f{SymbolKind::trace, 1, 2, true};
  IntegralValue a = mc_integral(MatrixGroup::unitary, 4, f, 20000, 11);
  IntegralValue b = mc_integral(MatrixGroup::unitary, 4, f, 20000, 11);
  CHECK(a.estimate == b.estimate);  // same seed, same stream
  CHECK(a.std_error == b.std_error);
  CHECK(a.samples == 20000);

  // E|Tr U^2|^2 = 2 over U(4); allow five standard errors
  CHECK(std::abs(a.estimate - 2.0) < 5.0 * a.std_error);

  IntegralValue c = mc_integral(MatrixGroup::unitary, 4, f, 20000, 12);
  CHECK(c.estimate != a.estimate);  // a fresh seed moves the stream

  // symplectic sampling against the exact pair value
  CompositionFunctional g{SymbolKind::trace, 1, 3, true};
  IntegralValue d = mc_integral(MatrixGroup::symplectic, 3, g, 20000, 5);
  CHECK(std::abs(d.estimate - to_double(symplectic_trace_pair(3, 3, 3))) < 5.0 * d.std_error);
}
