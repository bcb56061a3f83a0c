#include "doctest.h"

#include <cmath>

#include "ffvar/errors.hpp"
#include "ffvar/poly.hpp"
#include "ffvar/stats.hpp"

using namespace ffvar;

namespace {

void check_exact(const VarianceReport& r, const BigRat& variance) {
  CHECK(r.variance_direct == variance);
  CHECK(r.variance_via_characters == variance);
  CHECK(r.variance_exact_match);
  CHECK(r.member_identities_ok);
  CHECK(r.rounding_bound == 0.0);
}

}  // namespace

TEST_CASE("quadratic-residue variances at pinned points") {
  VarianceReport r = qr_stat(5, 1, Weight::divisor, 2, 2);
  check_exact(r, BigRat(241, 4));
  CHECK(r.family_size == 40);
  CHECK(r.mean_observed == BigRat(45));
  CHECK(r.mean_closed_form == BigRat(75, 2));
  // centering uses the exact main term, so the observed mean may differ
  CHECK_FALSE(r.mean_exact_match);

  check_exact(qr_stat(5, 1, Weight::von_mangoldt, 2, 2), BigRat(41, 4));
  check_exact(qr_stat(5, 1, Weight::divisor, 2, 3), BigRat(125));
  check_exact(qr_stat(5, 1, Weight::von_mangoldt, 2, 3), BigRat(45));
}

TEST_CASE("short-interval variances at pinned points") {
  VarianceReport r = short_interval_stat(3, 4, 1, 1);
  check_exact(r, BigRat(494, 81));
  CHECK(r.family_size == 9);
  CHECK(r.mean_exact_match);

  check_exact(short_interval_stat(3, 4, 1, 2), BigRat(310, 9));
  check_exact(short_interval_stat(5, 4, 2, 2), BigRat(36, 25));
}

TEST_CASE("progression variances at pinned points, with the parity split") {
  Poly modulus = Poly::parse(3, "T^2+T");
  struct Point {
    int n, k;
    BigRat var, odd, even;
  };
  const Point points[] = {
      {3, 1, BigRat(3, 16), BigRat(1, 8), BigRat(1, 16)},
      {3, 2, BigRat(3, 4), BigRat(1, 2), BigRat(1, 4)},
      {4, 1, BigRat(3, 16), BigRat(1, 8), BigRat(1, 16)},
      {4, 2, BigRat(27, 16), BigRat(9, 8), BigRat(9, 16)},
  };
  for (const Point& p : points) {
    VarianceReport r = ap_stat(3, modulus, p.n, p.k);
    check_exact(r, p.var);
    CHECK(r.family_size == 4);
    CHECK(r.ap_odd_contribution == p.odd);
    CHECK(r.ap_even_contribution == p.even);
    CHECK(r.ap_odd_contribution + r.ap_even_contribution == r.variance_via_characters);
    CHECK(r.mean_exact_match);
  }
}

TEST_CASE("sector variances at pinned points") {
  check_exact(sector_stat(5, 4, Weight::divisor, 1, 2), BigRat(16, 25));
  check_exact(sector_stat(5, 4, Weight::von_mangoldt, 1, 2), BigRat(724, 625));
  check_exact(sector_stat(5, 4, Weight::divisor, 2, 3), BigRat(592, 25));
  check_exact(sector_stat(5, 4, Weight::von_mangoldt, 2, 3), BigRat(6336, 625));
  CHECK(sector_stat(5, 4, Weight::divisor, 1, 2).family_size == 25);
}

TEST_CASE("coefficient reversal fixes degree and pairs intervals") {
  for (int64_t idx = 0; idx < 81; ++idx) {
    std::vector<int64_t> c(5, 0);
    int64_t t = idx;
    for (int i = 0; i < 4; ++i) {
      c[i] = t % 3;
      t /= 3;
    }
    c[4] = 1;
    Poly f(3, c);
    if (f.coeff(0) == 0) continue;
    CHECK(involution_star(involution_star(f)) == f);
  }
}

TEST_CASE("matched integral pairing table and prefactors") {
  VarianceReport qr = qr_stat(5, 1, Weight::divisor, 2, 2);
  RmtIntegralSpec spec = expected_integral_spec(qr);
  CHECK(spec.group == MatrixGroup::symplectic);
  CHECK(spec.dim == 1);  // Sp(2g) with g = 1
  CHECK(spec.functional.kind == SymbolKind::secular);
  CHECK(spec.functional.squared);
  CHECK(rmt_prefactor(qr) == BigRat(25, 4));  // q^n / 4

  RmtComparison cmp = rmt_comparison(qr, spec, IntegralValue::exact_value(BigRat(10)));
  CHECK(std::abs(cmp.prediction - 62.5) < 1e-12);
  CHECK(std::abs(cmp.ratio - 0.964) < 1e-12);

  VarianceReport si = short_interval_stat(3, 4, 1, 1);
  RmtIntegralSpec si_spec = expected_integral_spec(si);
  CHECK(si_spec.group == MatrixGroup::unitary);
  CHECK(si_spec.dim == 1);  // U(n - h - 2)
  CHECK(si_spec.functional.kind == SymbolKind::trace);
  CHECK(rmt_prefactor(si) == BigRat(9));  // q^(h+1)

  VarianceReport ap = ap_stat(3, Poly::parse(3, "T^2+T"), 3, 1);
  RmtIntegralSpec ap_spec = expected_integral_spec(ap);
  CHECK(ap_spec.group == MatrixGroup::unitary);
  CHECK(ap_spec.dim == 1);  // U(deg Q - 1)
  CHECK(rmt_prefactor(ap) == BigRat(3));  // q^n / |Q|

  VarianceReport se = sector_stat(5, 4, Weight::von_mangoldt, 1, 2);
  RmtIntegralSpec se_spec = expected_integral_spec(se);
  CHECK(se_spec.group == MatrixGroup::symplectic);
  CHECK(se_spec.dim == 1);  // Sp(2 kappa - 2)
  CHECK(se_spec.functional.kind == SymbolKind::trace);
  CHECK(rmt_prefactor(se) == BigRat(1));  // q^(nu - kappa) with nu = kappa = 2
}

TEST_CASE("parameter windows are enforced") {
  CHECK_THROWS_AS(qr_stat(7, 1, Weight::divisor, 2, 2), WindowError);   // q = 3 mod 4
  CHECK_THROWS_AS(qr_stat(4, 1, Weight::divisor, 2, 2), WindowError);   // not prime
  CHECK_THROWS_AS(sector_stat(5, 3, Weight::divisor, 1, 2), WindowError);  // odd resolution
  CHECK_THROWS_AS(qr_stat(13, 1, Weight::divisor, 2, 3, 50), GuardrailError);
}
