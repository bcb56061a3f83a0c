// Variance statistics for weighted counts of monic polynomials over F_q[T]
// in quadratic-residue classes, angular sectors, short intervals, and
// arithmetic progressions.
//
// Every statistic is computed along two independent routes:
//   direct     - enumerate the family, accumulate the weighted counts, and
//                average the squared deviation from the designated centering
//                term (exact main term for residue classes and progressions,
//                family average for sectors and intervals);
//   characters - expand each count in characters of the relevant group and
//                apply orthogonality, reducing the variance to a sum of
//                |M(n; w chi)|^2 over nontrivial characters, carried exactly
//                in Z[zeta_E].
// The two routes must agree as exact rationals; the report records both
// values, a per-member identity check, and the matched random-matrix
// prediction with its exact prefactor.

#pragma once

#include <cstdint>
#include <string>

#include "ffvar/arith_weights.hpp"
#include "ffvar/bigint.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/haar.hpp"
#include "ffvar/integral_value.hpp"
#include "ffvar/poly.hpp"

namespace ffvar {

enum class StatFamily { quadratic_residues, sectors, short_intervals, progressions };

// printable id, e.g. "qr-divisor", "short-interval-von-mangoldt"
std::string stat_family_name(StatFamily family, Weight w);

struct VarianceReport {
  std::string statistic;
  StatFamily family = StatFamily::quadratic_residues;
  Weight weight = Weight::divisor;
  int k = 1;     // weight index: d_k or Lambda_k
  int n = 0;     // degree of the polynomials being summed
  int64_t q = 0;

  // family parameters (the used subset depends on the family)
  int g = 0;         // quadratic residues: moduli are P in P_{2g+1}
  int sector_k = 0;  // sectors: angular resolution k = 2 kappa
  int h = 0;         // short intervals: interval radius
  Poly ap_modulus;   // progressions: squarefree modulus Q

  int64_t family_size = 0;

  // family average of the count, and the exact closed form for the
  // designated centering term.  For sectors, intervals, and progressions the
  // centering term IS the family average, so the two must match exactly;
  // for quadratic residues the centering term is the main term, which the
  // family average approaches only as q grows.
  BigRat mean_observed;
  BigRat mean_closed_form;
  bool mean_exact_match = false;

  BigRat variance_direct;
  BigRat variance_via_characters;
  bool variance_exact_match = false;

  // every family member passed its exact two-route identity
  bool member_identities_ok = false;

  bool characters_complex = false;  // some character takes non-real values
  double rounding_bound = 0.0;      // 0: the character route was exact end to end

  // progressions only: exact split of the character-route variance
  BigRat ap_odd_contribution;
  BigRat ap_even_contribution;

  double seconds = 0.0;
};

// Sum of w(f) over f in M_n lying in a fixed quadratic-residue class mod P,
// averaged over all monic irreducible P of degree 2g+1.
//   pre: q prime with q = 1 mod 4 (WindowError otherwise);
//        divisor weight: n <= 2gk; von Mangoldt weight: k <= n.
VarianceReport qr_stat(int64_t q, int g, Weight w, int k, int n,
                       int64_t guardrail = kDefaultGuardrail);

// Sum of w(f) over f in M_nu with f(0) != 0 whose direction U_k(f) lands in
// a fixed sector, over all q^kappa sectors (kappa = sector_k/2).
//   pre: q odd prime (WindowError otherwise); sector_k even >= 2;
//        divisor weight: nu <= ell(2 kappa - 2); von Mangoldt: ell <= nu.
VarianceReport sector_stat(int64_t q, int sector_k, Weight w, int ell, int nu,
                           int64_t guardrail = kDefaultGuardrail);

// Sum of Lambda_k(f) over the short interval I(T^{h+1}B; h) intersected with
// {f(0) != 0}, over all B in M_{n-h-1}.
//   pre: 0 <= h <= n-2; 1 <= k <= n.
VarianceReport short_interval_stat(int64_t q, int n, int h, int k,
                                   int64_t guardrail = kDefaultGuardrail);

// Sum of Lambda_k(f) over f in M_n with f = A mod Q, over all residues A
// coprime to the squarefree modulus Q.
//   pre: Q squarefree of positive degree (WindowError otherwise); 1 <= k <= n.
VarianceReport ap_stat(int64_t q, const Poly& modulus, int n, int k,
                       int64_t guardrail = kDefaultGuardrail);

// f*(T) = T^deg(f) f(1/T); requires f(0) != 0 (WindowError otherwise).
// Multiplicative, degree-preserving, and Lambda_k-invariant on its domain.
Poly involution_star(const Poly& f);

// Exact sum of Lambda_k(f) over f in M_n coprime to a squarefree modulus
// whose irreducible factors have the given degrees (series expansion of the
// k-th power of the coprime log-derivative generating function).
BigInt coprime_vm_sum(int64_t q, int n, int k, const std::vector<int>& prime_degrees);

// ----------------------------------------------------------------------
// random-matrix pairing
// ----------------------------------------------------------------------

// which matrix integral a report is compared against
struct RmtIntegralSpec {
  MatrixGroup group = MatrixGroup::unitary;
  int dim = 0;  // N in U(N) / Sp(2N)
  CompositionFunctional functional;
};

// the integral matched to a report:
//   quadratic residues -> Sp(2g),          squared secular (d) / trace (Lambda)
//   sectors            -> Sp(2 kappa - 2), squared secular (d) / trace (Lambda)
//   short intervals    -> U(n-h-2),        squared trace
//   progressions       -> U(deg Q - 1),    squared trace
RmtIntegralSpec expected_integral_spec(const VarianceReport& r);

// exact prefactor multiplying the integral:
//   quadratic residues q^n/4, sectors q^(nu-kappa),
//   short intervals q^(h+1), progressions q^n/|Q|
BigRat rmt_prefactor(const VarianceReport& r);

struct RmtComparison {
  RmtIntegralSpec spec;
  BigRat prefactor;
  IntegralValue integral;
  double prediction = 0.0;  // prefactor x integral
  double ratio = 0.0;       // variance / prediction; 0 when the prediction is 0
};

// validates the pairing (WindowError on mismatch) and forms the ratio
RmtComparison rmt_comparison(const VarianceReport& r, const RmtIntegralSpec& spec,
                             const IntegralValue& integral);

}  // namespace ffvar
