// Sector decomposition of the auxiliary ring F_q[S].
//
// sigma is the involution S -> -S.  For a unit f mod S^k the direction
//   U_k(f) = sqrt(f / sigma(f))  (square root on the branch = 1 mod S)
// lands in the norm-one group
//   S1_k = { v mod S^k : v(0) = 1, v sigma(v) = 1 mod S^k },  #S1_k = q^kappa,
// kappa = floor(k/2), and two units lie in the same sector iff their
// directions agree.  Characters of S1_k pulled back through U_k are exactly
// the "super-even" characters; their ramification is measured by the Swan
// conductor, the largest d < k where the character is nontrivial on the
// 1 + (S^d) filtration (always odd for nontrivial characters).

#pragma once

#include <cstdint>
#include <vector>

#include "ffvar/characters.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/poly.hpp"

namespace ffvar {

// inverse of a unit mod S^k (constant term nonzero)
Poly unit_inverse_mod_sk(const Poly& f, int k);

// Hensel square root of r mod S^k on the branch = 1 mod S; r must have
// constant term 1 and be a square on that branch (always true for norm-one
// ratios f/sigma(f))
Poly sqrt_one_branch_mod_sk(const Poly& r, int k);

// the direction map; f must be a unit mod S^k (f(0) != 0); scalar-invariant:
// U_k(c f) = U_k(f)
Poly u_k_map(const Poly& f, int k);

class SectorGroup {
 public:
  SectorGroup(int64_t q, int k, int64_t guardrail = kDefaultGuardrail);

  int64_t q() const { return q_; }
  int k() const { return k_; }
  int kappa() const { return k_ / 2; }
  int64_t sector_count() const { return structure_.size; }  // q^kappa
  int64_t exponent() const { return structure_.exponent; }
  const GroupStructure& structure() const { return structure_; }
  const std::vector<Poly>& elements() const { return elements_; }

  // index of a norm-one element in the fixed element ordering
  int64_t sector_index(const Poly& v) const;

  // sector label of a unit f: index of U_k(f)
  int64_t sector_of(const Poly& f) const { return sector_index(u_k_map(f, k_)); }

  // super-even characters = characters of S1_k, evaluated at U_k(f)
  struct Char {
    std::vector<int64_t> t;
    int64_t index = 0;  // 0 = trivial
  };

  Char character(int64_t index) const;
  bool is_trivial(const Char& xi) const { return xi.index == 0; }

  // exponent of Xi(f) as a power of zeta_E; false if f is not a unit mod S^k
  bool eval(const Char& xi, const Poly& f, int64_t* exponent) const;

  // exponent on a norm-one element directly
  int64_t eval_norm_one(const Char& xi, const Poly& v) const;

  // Swan conductor: largest d in [1, k) with Xi nontrivial on 1 + (S^d);
  // 0 for the trivial character
  int swan_conductor(const Char& xi) const;

  // maximal Swan conductor, attained exactly by the primitive characters
  int max_swan() const { return 2 * kappa() - 1; }
  bool is_primitive(const Char& xi) const {
    return !is_trivial(xi) && swan_conductor(xi) == max_swan();
  }

  int64_t primitive_count() const;

 private:
  int64_t q_;
  int k_;
  std::vector<Poly> elements_;  // S1_k in a fixed order
  GroupStructure structure_;
};

}  // namespace ffvar
