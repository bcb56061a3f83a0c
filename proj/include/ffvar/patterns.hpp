// Factorization cycle patterns and their permutation-model counts.
//
// The pattern of f is the multiset of degrees of its irreducible factors
// (with multiplicity), a partition of deg f.  Squarefree polynomials of
// pattern sigma occur with density s_sigma(m)/m! -- the proportion of
// permutations of S_m with that cycle type -- up to O(1/q).

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ffvar/bigint.hpp"
#include "ffvar/factor.hpp"

namespace ffvar {

// partition of m, parts sorted descending
using CyclePattern = std::vector<int>;

CyclePattern pattern_of(const Factorization& fac);

// number of permutations in S_m with cycle type sigma:
//   s_sigma(m) = m! / prod_d (d^{m_d} m_d!)
BigInt pattern_count_s(const CyclePattern& sigma);

// all partitions of m, in a fixed deterministic order
std::vector<CyclePattern> partitions_of(int m);

// exact number of squarefree monics of degree m over F_q with pattern sigma:
// prod_d binom(#irreducibles of degree d, multiplicity of d in sigma)
BigInt pattern_count_exact(int64_t q, const CyclePattern& sigma);

// sigma refines rho: sigma's parts can be grouped into blocks whose sums give
// rho's parts (both partitions of the same m)
bool refines(const CyclePattern& sigma, const CyclePattern& rho);

struct PatternFamilyReport {
  int m = 0;
  int64_t q = 0;
  int64_t squarefree_total = 0;
  // per pattern: enumerated count, closed-form count, permutation density
  struct Row {
    CyclePattern sigma;
    int64_t enumerated = 0;
    BigInt closed_form;
    BigRat permutation_density;   // s_sigma(m)/m!
    BigRat enumerated_density;    // enumerated/q^m
  };
  std::vector<Row> rows;
  // per coarse pattern rho: #H_rho via distinct products of monic tuples vs
  // sum over refining sigma of #P_sigma
  struct CoarseRow {
    CyclePattern rho;
    int64_t product_count = 0;
    int64_t refinement_sum = 0;
  };
  std::vector<CoarseRow> coarse_rows;
  bool all_exact = false;
};

// enumerate squarefree monics of degree m, bucket by pattern, and verify the
// disjoint-union decomposition of the coarse families
PatternFamilyReport pattern_family_check(int64_t q, int m, int64_t guardrail = kDefaultGuardrail);

}  // namespace ffvar
