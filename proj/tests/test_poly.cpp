#include "doctest.h"

#include "ffvar/factor.hpp"
#include "ffvar/poly.hpp"

using namespace ffvar;

namespace {

// all monic polynomials of the given degree, by counting in base q
std::vector<Poly> monics(int64_t q, int n) {
  std::vector<Poly> out;
  int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= q;
  for (int64_t idx = 0; idx < total; ++idx) {
    std::vector<int64_t> c(n + 1, 0);
    int64_t t = idx;
    for (int i = 0; i < n; ++i) {
      c[i] = t % q;
      t /= q;
    }
    c[n] = 1;
    out.push_back(Poly(q, c));
  }
  return out;
}

}  // namespace

TEST_CASE("polynomial ring arithmetic over a prime field") {
  const int64_t q = 5;
  Poly t = Poly::var(q);
  Poly a = (t + Poly::one(q)) * (t + Poly::constant(q, 2));
  CHECK(a == Poly(q, {2, 3, 1}));  // (T+1)(T+2) = T^2 + 3T + 2

  // division with remainder round-trips
  Poly f = Poly(q, {1, 4, 0, 2, 3});
  Poly d = Poly(q, {2, 1, 1});
  auto [quo, rem] = f.divmod(d);
  CHECK(quo * d + rem == f);
  CHECK(rem.deg() < d.deg());

  // gcd of coprime polynomials is a unit
  Poly g = Poly::gcd(t * t + Poly::one(q), t);
  CHECK(g.deg() == 0);
}

TEST_CASE("parser accepts the usual polynomial spellings") {
  CHECK(Poly::parse(3, "T^2+T") == Poly(3, {0, 1, 1}));
  CHECK(Poly::parse(5, "2*T^3+4") == Poly(5, {4, 0, 0, 2}));
  CHECK(Poly::parse(7, "1") == Poly::one(7));
}

TEST_CASE("coefficient reversal is an involution away from zero constant term") {
  const int64_t q = 3;
  for (const Poly& f : monics(q, 3)) {
    if (f.coeff(0) == 0) continue;
    Poly s = f.star();
    CHECK(s.deg() == f.deg());
    CHECK(s.star() == f);
  }
}

TEST_CASE("irreducible counts match the Moebius formula values") {
  // q = 2: 2, 1, 2, 3, 6, 9
  CHECK(count_irreducibles(2, 1) == 2);
  CHECK(count_irreducibles(2, 2) == 1);
  CHECK(count_irreducibles(2, 3) == 2);
  CHECK(count_irreducibles(2, 4) == 3);
  CHECK(count_irreducibles(2, 5) == 6);
  CHECK(count_irreducibles(2, 6) == 9);
  CHECK(count_irreducibles(5, 3) == 40);
  CHECK(count_irreducibles(13, 2) == 78);

  CHECK(irreducibles(5, 3).size() == 40);
  for (const Poly& p : irreducibles(5, 3)) {
    CHECK(p.deg() == 3);
    CHECK(is_irreducible(p));
  }
}

TEST_CASE("factorization reassembles the input and flags irreducibles") {
  const int64_t q = 5;
  for (const Poly& f : monics(q, 4)) {
    if (f.is_zero()) continue;
    Factorization fac = factor(f);
    Poly prod = Poly::one(q);
    int degsum = 0;
    for (const auto& [p, e] : fac.factors) {
      CHECK(is_irreducible(p));
      for (int i = 0; i < e; ++i) prod = prod * p;
      degsum += p.deg() * e;
    }
    CHECK(prod == f);
    CHECK(degsum == f.deg());
  }
}
