// Exact moments of traces and secular coefficients of Haar-random matrices
// from the unitary group U(N) and the unitary symplectic group Sp(2N).
//
// Contents:
//   * product moment rules for traces of powers (symplectic and unitary),
//     exact inside an explicit validity window and flagged outside it;
//   * the all-parameter piecewise formula for first and second moments of
//     symplectic traces, with no window;
//   * composition sums: moments of  sum_{j_1+...+j_k=n} prod Tr(U^{j_i}),
//     first power and squared magnitude, assembled from the product rules;
//   * the determinant generating series  integral of det(I + xU)^k  over
//     Sp(2N) via the k x k binomial determinant, divided exactly by
//     (1-x^2)^{k(k+1)/2};
//   * the autocorrelation expansion of  integral of prod_i det(I + x_i U)
//     over Sp(2N): the 2^m-term signed sum over exponent flips, expanded
//     symbolically with its removable singularities cancelled by exact
//     polynomial division (never by numeric limits);
//   * swap-term series for the two-fold convolution statistics and the
//     piecewise closed forms they imply, including both the literal
//     printed variants and the corrected variants where those disagree
//     (see the discrepancy helpers);
//   * limiting profile functions gamma (closed forms, exact quadrature
//     for k = 2, Monte Carlo for k = 3).
//
// Everything except the gamma_k Monte Carlo fallback is exact rational
// arithmetic built on BigInt/BigRat.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ffvar/bigint.hpp"
#include "ffvar/errors.hpp"
#include "ffvar/integral_value.hpp"
#include "ffvar/series.hpp"

namespace ffvar {

enum class MatrixGroup { unitary, symplectic };

// ---------------------------------------------------------------------------
// product moment rules
// ---------------------------------------------------------------------------

// Specification of E[ prod_j Tr(U^j)^{a[j]} ].
struct MomentSpec {
  MatrixGroup group = MatrixGroup::symplectic;
  int64_t N = 1;
  std::map<int64_t, int64_t> a;  // j -> exponent of Tr(U^j); j >= 1, exponent >= 1

  int64_t weight() const;  // sum of j * a[j]
};

// E[ prod_j Tr(U^j)^{a_j} ] over Sp(2N) as a product of per-power factors
//   (-1)^{(j-1) a_j} g_j(a_j),
//   g_j(a) = j^{a/2} (a-1)!!            for odd j (0 for odd a),
//   g_j(a) = sum_l C(a,2l) j^l (2l-1)!! for even j.
// Exact when N >= weight(); outside that window the product is still
// returned but flagged (in_window = false).
IntegralValue ds_symplectic_moment(const MomentSpec& spec);

// E[ prod_j Tr(U^j)^{a_j} conj(Tr(U^j))^{b_j} ] over U(N):
// zero unless a == b as multisets, else prod_j j^{a_j} a_j!.
// Exact when N >= max(sum j a_j, sum j b_j); flagged outside.
IntegralValue ds_unitary_moment(const std::map<int64_t, int64_t>& a,
                                const std::map<int64_t, int64_t>& b, int64_t N);

// E[Tr(U^j)] over Sp(2N): 2N at j = 0, -1 for even 1 <= |j| <= 2N,
// 0 otherwise.  Exact for all arguments (traces are real and T_{-j} = T_j).
BigRat symplectic_trace_mean(int64_t j, int64_t N);

// E[Tr(U^{j1}) Tr(U^{j2})] over Sp(2N): piecewise indicator formula,
// exact for all arguments with no validity window.
BigRat symplectic_trace_pair(int64_t j1, int64_t j2, int64_t N);

// E[|Tr(U^j)|^2] over U(N) for j >= 1: min(j, N), plus the variant that
// reads max(j, N) as printed in one source; the two disagree whenever
// j != N and are adjudicated numerically (see verify suite).
BigInt de_trace_covariance(int64_t j, int64_t N);          // min(j, N)
BigInt de_trace_covariance_printed(int64_t j, int64_t N);  // max(j, N)

// ---------------------------------------------------------------------------
// composition sums
// ---------------------------------------------------------------------------

enum class CompositionKind {
  symplectic,          // E[ sum_{j_1+...+j_k=n, j_i>=1} prod Tr(U^{j_i}) ] over Sp(2N)
  symplectic_squared,  // E[ ( same sum )^2 ]                              over Sp(2N)
  unitary_squared,     // E[ | same sum |^2 ]                              over U(N)
};

// Assembled from the product moment rules by enumerating partitions of n
// into k parts with ordered-composition multiplicities k!/prod a_j!
// (first power) or the square of that multiplicity (unitary squared
// magnitude, where cross terms between distinct part multisets vanish).
// Windows: N >= n (symplectic, unitary_squared), N >= 2n (symplectic_squared);
// values outside are still the assembled products, flagged.
IntegralValue composition_moment_sums(CompositionKind kind, int64_t k, int64_t n, int64_t N);

// The same unitary squared-magnitude sum in two variants:
//   literal:   sum over part multisets of prod_j j^{a_j} a_j!   (no multiplicity),
//   corrected: sum with the squared composition multiplicity (k!/prod a_j!)^2.
// They disagree for k >= 2, n >= 3; both are reported, neither silently chosen.
BigInt int_unit_literal(int64_t n, int64_t k);
BigInt int_unit_corrected(int64_t n, int64_t k);

// ---------------------------------------------------------------------------
// determinant generating series over Sp(2N)
// ---------------------------------------------------------------------------

// integral of det(I + xU)^k dU as a polynomial of degree 2Nk: the k x k
// determinant with entries C(j-1,i-1) x^{j-i} - C(2N+2k+1-j, i-1) x^{2N+2k+2-j-i}
// divided exactly by (1-x^2)^{k(k+1)/2}.  Coefficient of x^n is the n-th
// divisor-composition moment E[ sum_{j_1+...+j_k=n, 0<=j_i} prod Sc_{j_i} ].
// Throws IdentityError if the division leaves a remainder (implementation
// bug by construction), GuardrailError for k > 4 or N > 16.
RatSeries mr_determinant_series(int64_t k, int64_t N);

// ---------------------------------------------------------------------------
// autocorrelation expansion over Sp(2N)
// ---------------------------------------------------------------------------

// Multivariate polynomial with exact rational coefficients, keyed by
// exponent tuples (one exponent per variable).
struct MultiSeries {
  int64_t var_count = 1;
  std::map<std::vector<int64_t>, BigRat> c;

  // coefficient of (x_1 ... x_v)^n for n = 0..max_order
  RatSeries diagonal(int64_t max_order) const;
  // set all variables equal: series in one variable
  RatSeries specialize_equal(int64_t max_order) const;
};

// integral of prod_{i=1..var_count} det(I + x_i U)^k dU over Sp(2N),
// expanded from the 2^m-term flip sum (m = k * var_count slots):
//   sum over eps in {-1,+1}^m of prod_s z_s^{N(1-eps_s)}
//     prod_{s<=t} (1 - z_s^{eps_s} z_t^{eps_t})^{-1},
// computed over a common denominator in m distinct formal variables;
// the pole factors (z_t - z_s) divide the combined numerator exactly and
// are removed by synthetic polynomial division before the variables are
// merged, so repeated variables never meet a singularity.
// Requires k <= 2, k * var_count <= 4, N <= 16 (N <= 8 when m = 4).
MultiSeries bump_gamburd_expand(int64_t k, int64_t N, int64_t var_count);

// Direct rational evaluation of the same flip sum at distinct numeric
// points (throws WindowError if a denominator factor vanishes, e.g. for
// equal or reciprocal coordinates).  Used to cross-check the expansion.
BigRat bump_gamburd_epsilon_sum(const std::vector<BigRat>& x, int64_t N);

// ---------------------------------------------------------------------------
// swap-term series (two-fold convolution statistics)
// ---------------------------------------------------------------------------

// Zero-swap series over Sp(2N) for the k-fold trace composition sum:
// coefficient of x^{2m} is (-1)^k sum_s C(m+s-1, m+s-k) C(k,2s) (2s-1)!!.
// Independent of N; the printed lower summation bound starts one term
// late for even k, and the binomial vanishing built in here supplies the
// correct first term.
RatSeries sp_zero_swap_series(int64_t k, int64_t max_order);

// Assembled swap series for k = 2.
//   symplectic: zero-swap plus the one-swap tail -sum_j (2N+2j-1) x^{2N+2j}
//     (the two-swap terms vanish on the diagonal); coefficient of x^n equals
//     (n-1) for even n <= 2N+1 and 0 beyond, for all orders.
//   unitary: the printed matched-exponent assembly (zero-swap closed form
//     plus the one-swap bracket from n >= N+2); its derivation covers
//     n <= 2N+1, so the returned series is truncated there even when a
//     larger max_order is requested.
// Throws WindowError for k != 2.
RatSeries swap_series(MatrixGroup group, int64_t k, int64_t N, int64_t max_order);

// Pieces of the unitary k = 2 assembly, exposed for cross-checks.
BigRat unitary_zero_swap_printed(int64_t n);           // n(4n^2+3n-4)/24 + (-1)^n n^2/8
BigRat unitary_one_swap_bracket(int64_t n, int64_t N); // closed form of the f-combination
BigRat unitary_f_direct(int64_t n, int64_t N);         // lattice-count sum
BigRat unitary_f_quartic(int64_t n, int64_t N);        // quartic closed form of the same

// ---------------------------------------------------------------------------
// piecewise closed forms and their limiting profiles
// ---------------------------------------------------------------------------

// name ∈ {sp_d2, sp_d1_sq, sp_l1_sq, sp_l2, u_l2_sq}:
//   sp_d2     E[ sum_{j1+j2=n} Sc_{j1} Sc_{j2} ]   over Sp(2N)  (window seams at n/2)
//   sp_d1_sq  E[ Sc_n^2 ]                          over Sp(2N)
//   sp_l1_sq  E[ Tr(U^n)^2 ]                       over Sp(2N)
//   sp_l2     E[ sum_{j1+j2=n, j_i>=1} Tr Tr ]     over Sp(2N)
//   u_l2_sq   E[ | same trace sum |^2 ]            over U(N), printed variant
//             (disagrees with the product rule inside its window for
//              3 <= n <= N; see u_l2_sq_corrected and the verify suite)
// Throws WindowError outside the stated parameter windows.
IntegralValue corollary_closed_forms(const std::string& name, int64_t n, int64_t N);

// The product-rule value n(n^2-1)/3 for the unitary two-fold squared sum,
// valid (exact) for n <= N.
IntegralValue u_l2_sq_corrected(int64_t n, int64_t N);

// Limiting profile attached to a closed form: value = gamma(c) and the
// prediction gamma(c) * N^scale_power for the scaled parameter c.
struct GammaProfile {
  double c = 0;
  double gamma = 0;
  int scale_power = 1;
  double prediction = 0;
};
GammaProfile corollary_gamma_profile(const std::string& name, int64_t n, int64_t N);

// Piecewise profile functions by name:
//   gamma1: 1 on [0,1]
//   gamma2: c^3/6 on [0,1], (2-c)^3/6 on [1,2]
//   sp_d2: c^2/2 on [0,1], (2-c)^2/2 on [1,2]
//   sp_d1_sq: c/2 on [0,1], (2-c)/2 on [1,2]
//   sp_l1_sq: c on [0,2], 2 for c >= 2
//   sp_l2: c on [0,1], 0 for c >= 1
//   u_l2_sq: c^3/6 on [0,1], c^3/6 + (1-c)^3/3 on [1,2]
// Throws WindowError for c outside the stated domain (c < 0 anywhere).
double gamma_closed_forms(const std::string& name, double c);

// Monte Carlo / quadrature evaluation of the determinantal profile
//   gamma_k(c) = 1/(k! G(1+k)^2) * integral over [0,1]^k of
//                delta_c(w_1+...+w_k) prod_{i<j} (w_i-w_j)^2.
// k = 1 trivial, k = 2 exact one-dimensional quadrature (the reduced
// integrand is quadratic), k = 3 Monte Carlo over the simplex slice.
// Throws WindowError for k > 3 or c outside [0, k].
struct GammaEstimate {
  double value = 0;
  double std_error = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
};
GammaEstimate gamma_k(int64_t k, double c, uint64_t samples = 1000000, uint64_t seed = 1);

}  // namespace ffvar
