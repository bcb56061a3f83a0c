// Irreducibility, factorization, and irreducible enumeration over F_q.
//
// Factorization runs squarefree decomposition, then distinct-degree
// splitting, then equal-degree splitting.  The equal-degree stage needs
// random splitters; they are drawn from a counter-based stream derived from
// (seed, polynomial), so results are deterministic and independent of call
// order.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ffvar/poly.hpp"

namespace ffvar {

// default work bound for enumerations (polynomials visited)
inline constexpr int64_t kDefaultGuardrail = 100'000'000;

// (irreducible monic factor, multiplicity), sorted by factor ordering;
// product of P^e equals the monic part of the input
struct Factorization {
  std::vector<std::pair<Poly, int>> factors;

  int divisor_count() const {
    int n = 1;
    for (auto& [p, e] : factors) n *= (e + 1);
    return n;
  }
};

bool is_irreducible(const Poly& f);

// complete factorization of a nonzero polynomial (unit part dropped)
Factorization factor(const Poly& f, uint64_t seed = 0);

// number of monic irreducibles of degree n over F_q:  (1/n) sum_{d|n} mu(d) q^{n/d}
int64_t count_irreducibles(int64_t q, int n);

// all monic irreducibles of degree n, in enumeration-index order
std::vector<Poly> irreducibles(int64_t q, int n, int64_t guardrail = kDefaultGuardrail);

// Moebius function (small arguments)
int mobius(int n);

}  // namespace ffvar
