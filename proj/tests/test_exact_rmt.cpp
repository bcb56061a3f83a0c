#include "doctest.h"

#include <cmath>

#include "ffvar/bigint.hpp"
#include "ffvar/exact_rmt.hpp"
#include "ffvar/series.hpp"

using namespace ffvar;

TEST_CASE("two-fold determinant series matches its piecewise window form") {
  for (int64_t N : {1L, 3L, 8L}) {
    RatSeries s = mr_determinant_series(2, N);
    CHECK(s.order() == 4 * N);  // a polynomial of degree 4N
    for (int64_t n = 0; n <= 4 * N; ++n) {
      BigRat expect(0);
      if (n % 2 == 0) {
        int64_t l = n / 2;
        if (l <= N)
          expect = BigRat(binomial(l + 2, 2));
        else if (l <= 2 * N)
          expect = BigRat(binomial(2 * N - l + 2, 2));
      }
      CHECK(s[static_cast<int>(n)] == expect);
    }
  }
}

TEST_CASE("two-fold composition sums equal n-1 at even weight inside the window") {
  for (int64_t N = 2; N <= 12; ++N) {
    for (int64_t n = 2; n <= N; ++n) {
      IntegralValue v = composition_moment_sums(CompositionKind::symplectic, 2, n, N);
      CHECK(v.exact);
      CHECK(v.in_window);
      CHECK(v.value == ((n % 2 == 0) ? BigRat(n - 1) : BigRat(0)));
    }
  }
}

TEST_CASE("diagonal trace pairs across all three windows") {
  for (int64_t N = 1; N <= 6; ++N) {
    for (int64_t n = 1; n <= 2 * N + 3; ++n) {
      int64_t eta = (n % 2 == 0) ? 1 : 0;
      BigRat expect;
      if (n <= N)
        expect = BigRat(n + eta);
      else if (n <= 2 * N)
        expect = BigRat(n - 1 + eta);
      else
        expect = BigRat(2 * N);
      CHECK(symplectic_trace_pair(n, n, N) == expect);
    }
  }
}

TEST_CASE("two-variable determinant diagonal hits every window branch") {
  for (int64_t N : {1L, 4L, 6L}) {
    MultiSeries ms = bump_gamburd_expand(1, N, 2);
    RatSeries diag = ms.diagonal(2 * N + 3);
    for (int64_t n = 0; n <= 2 * N + 3; ++n) {
      BigRat expect(0);
      if (n <= N)
        expect = BigRat((n + 2) / 2);
      else if (n <= 2 * N)
        expect = BigRat((2 * N - n + 2) / 2);
      CHECK(diag[static_cast<int>(n)] == expect);
    }
  }
}

TEST_CASE("product-moment rules at hand-checkable points") {
  // E|Tr U|^4 over U(N), N >= 2, equals 2
  CHECK(ds_unitary_moment({{1, 2}}, {{1, 2}}, 3).value == BigRat(2));
  CHECK(ds_unitary_moment({{1, 2}}, {{1, 2}}, 5).value == BigRat(2));
  // E|Tr U|^2 = 1 for N >= 1
  CHECK(ds_unitary_moment({{1, 1}}, {{1, 1}}, 1).value == BigRat(1));
  CHECK(ds_unitary_moment({{1, 1}}, {{1, 1}}, 4).value == BigRat(1));

  // E[(Tr U)^2] over Sp(2N) equals 1 (covariance of a mean -1 trace)
  MomentSpec spec;
  spec.group = MatrixGroup::symplectic;
  spec.N = 3;
  spec.a = {{1, 2}};
  CHECK(ds_symplectic_moment(spec).value == symplectic_trace_pair(1, 1, 3));
}

TEST_CASE("trace covariance: corrected rule and printed variant disagree off-diagonal") {
  CHECK(de_trace_covariance(2, 5) == 2);          // min(j, N)
  CHECK(de_trace_covariance_printed(2, 5) == 5);  // max(j, N)
  CHECK(de_trace_covariance(7, 4) == 4);
  CHECK(de_trace_covariance_printed(7, 4) == 7);
  CHECK(de_trace_covariance(3, 3) == de_trace_covariance_printed(3, 3));
}

TEST_CASE("named closed forms at pinned points") {
  IntegralValue v = corollary_closed_forms("sp_l2", 4, 8);
  CHECK(v.exact);
  CHECK(v.value == BigRat(3));

  CHECK(std::abs(gamma_closed_forms("sp_d2", 2.0)) < 1e-12);
  CHECK(std::abs(gamma_closed_forms("sp_l1_sq", 2.0) - 2.0) < 1e-12);
}

TEST_CASE("low-order profile integrals track their small-argument closed forms") {
  // k = 2: exact piecewise integration; compare with c^3/6 on [0, 1]
  for (double c : {0.25, 0.5, 1.0}) {
    GammaEstimate g = gamma_k(2, c, 1000, 1);
    CHECK(std::abs(g.value - c * c * c / 6.0) <= 0.02 * (c * c * c / 6.0));
  }
  // k = 1: the profile is identically 1 on [0, 1]
  GammaEstimate g1 = gamma_k(1, 0.75, 1000, 1);
  CHECK(std::abs(g1.value - 1.0) < 1e-12);
}

TEST_CASE("swap-form assembly reproduces the composition sums on every order") {
  for (int64_t N : {2L, 4L}) {
    RatSeries s = swap_series(MatrixGroup::symplectic, 2, N, 2 * N + 6);
    for (int n = 0; n <= s.order(); ++n) {
      BigRat expect(0);
      if (n % 2 == 0 && n >= 2 && n <= 2 * N + 1) expect = BigRat(n - 1);
      CHECK(s[n] == expect);
    }
  }
  // the unitary assembly's derivation stops at 2N+1, so the series truncates
  RatSeries u = swap_series(MatrixGroup::unitary, 2, 3, 20);
  CHECK(u.order() == 7);
}
