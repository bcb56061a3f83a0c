// Residue symbols and Dirichlet characters over F_q[T].
//
// The quadratic symbol has two independent implementations -- the Euler
// criterion (prime modulus) and reciprocity descent (any monic modulus,
// q = 1 mod 4) -- which must agree wherever both apply.
//
// Character groups are built from a generic abelian-group structure routine
// (order computation + invariant-factor refinement with exact discrete-log
// tables); the same routine serves the unit groups mod Q and the sector
// groups.  Character values are integer exponents of a fixed primitive
// root of unity of order = group exponent.

#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "ffvar/factor.hpp"
#include "ffvar/poly.hpp"

namespace ffvar {

// c^((q-1)/2) as +-1 for c nonzero mod q; 0 for c = 0
int legendre_const(int64_t c, int64_t q);

// (f/P) by the Euler criterion: f^((|P|-1)/2) mod P; P monic irreducible
int jacobi_euler(const Poly& f, const Poly& P);

// (f/Q) for monic Q of positive degree by reciprocity descent; needs q = 1 mod 4
int jacobi_reciprocity(const Poly& f, const Poly& Q);

// production symbol (Euler route)
inline int jacobi(const Poly& f, const Poly& P) { return jacobi_euler(f, P); }

// ----------------------------------------------------------------------
// generic abelian group structure
// ----------------------------------------------------------------------

using GroupMul = std::function<Poly(const Poly&, const Poly&)>;

struct GroupStructure {
  std::vector<Poly> generators;  // invariant-factor generators
  std::vector<int64_t> orders;   // orders[0] >= orders[1] >= ..., each divides the previous
  int64_t exponent = 1;          // orders[0], or 1 for the trivial group
  int64_t size = 1;
  std::unordered_map<Poly, std::vector<int64_t>, PolyHash> dlog;  // element -> exponent vector

  const std::vector<int64_t>& dlog_of(const Poly& x) const;
};

// Decompose a finite abelian group, given its elements and multiplication,
// into invariant-factor cyclic generators with a full discrete-log table.
GroupStructure abelian_structure(const std::vector<Poly>& elements, const GroupMul& mul,
                                 const Poly& identity);

// Characters of a decomposed group are indexed 0..size-1 (0 = trivial) by
// mixed radix over the invariant-factor orders; the tuple t gives
// chi(g_i) = zeta_E^{t_i * (E / o_i)}.
std::vector<int64_t> character_tuple(const GroupStructure& s, int64_t index);

// exponent of chi_t(x) as a power of zeta_E
int64_t character_exponent(const GroupStructure& s, const std::vector<int64_t>& t, const Poly& x);

// ----------------------------------------------------------------------
// Dirichlet characters mod Q
// ----------------------------------------------------------------------

class CharGroup {
 public:
  // builds the unit-group table of F_q[T]/(Q); Q monic, deg Q >= 1
  CharGroup(int64_t q, const Poly& modulus, int64_t guardrail = kDefaultGuardrail);

  int64_t q() const { return q_; }
  const Poly& modulus() const { return modulus_; }
  int64_t unit_count() const { return structure_.size; }  // Phi(Q)
  int64_t char_count() const { return structure_.size; }
  int64_t exponent() const { return structure_.exponent; }
  const GroupStructure& structure() const { return structure_; }
  const std::vector<Poly>& units() const { return units_; }

  struct Char {
    std::vector<int64_t> t;  // exponent of chi on generator i, mod orders[i]
    int64_t index = 0;       // mixed-radix index; 0 = trivial
  };

  Char character(int64_t index) const;

  bool is_trivial(const Char& chi) const { return chi.index == 0; }

  // chi(f) as an exponent of zeta_E; false if f is not coprime to Q
  bool eval(const Char& chi, const Poly& f, int64_t* exponent) const;

  // exponent for a unit residue already reduced mod Q
  int64_t eval_unit(const Char& chi, const Poly& unit_residue) const;

  // trivial on the constants F_q^*
  bool is_even(const Char& chi) const;

  // conductor equals the modulus (nontrivial on every mod-Q/P kernel)
  bool is_primitive(const Char& chi) const;

  int64_t even_char_count() const;

 private:
  int64_t q_;
  Poly modulus_;
  std::vector<Poly> units_;
  GroupStructure structure_;
  std::vector<Poly> prime_divisors_;  // distinct monic primes dividing Q
};

}  // namespace ffvar
