// Character sums, L-polynomials, and unitarized Frobenius spectra.
//
// For a nontrivial character the L-function
//   L(u, chi) = sum_{f monic} chi(f) u^{deg f}
// is a polynomial; after dividing out trivial zeros at u = 1 it unitarizes as
//   L(u, chi) = (1 - u)^lambda * det(1 - u sqrt(q) Theta),  Theta unitary.
// Weighted coefficient sums M(n; w chi) are read off exactly from L:
//   divisor weights:      M(n; d_k chi)      = [u^n] L(u, chi)^k
//   von Mangoldt weights: M(n; Lambda_k chi) = [u^n] (u L'/L)^k
// and spectrally from Theta as composition sums over secular coefficients or
// traces.  All tally arithmetic is exact in Z[zeta_E]; floats appear only in
// the spectral channel.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ffvar/arith_weights.hpp"
#include "ffvar/bigint.hpp"
#include "ffvar/characters.hpp"
#include "ffvar/cyclotomic.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/poly.hpp"
#include "ffvar/sectors.hpp"

namespace ffvar {

// ----------------------------------------------------------------------
// character evaluators
// ----------------------------------------------------------------------

// A character as "exponent of zeta_order, or zero": eval returns false when
// chi(f) = 0.  Evaluators built from a group object hold a reference to it;
// the group must outlive the evaluator.
struct CharEval {
  int order = 1;
  std::function<bool(const Poly&, int64_t*)> eval;
  bool nontrivial = true;
};

CharEval quadratic_char_eval(const Poly& p);  // f -> (f|P), order 2
CharEval dirichlet_char_eval(const CharGroup& g, const CharGroup::Char& chi);
CharEval supereven_char_eval(const SectorGroup& g, const SectorGroup::Char& xi);

// ----------------------------------------------------------------------
// exact coefficient sums
// ----------------------------------------------------------------------

struct WeightSpec {
  enum Kind { unit, divisor, von_mangoldt } kind = unit;
  int k = 1;
};

BigInt weighted_value(const WeightSpec& w, const Factorization& fac);

// M(n; w chi) as an exact tally over powers of zeta_E; zero_excluded
// restricts to f with f(0) != 0 (most characters enforce this themselves)
ExpTally coeff_sum(int64_t q, int n, const WeightSpec& w, const CharEval& chi,
                   bool zero_excluded = false, int64_t guardrail = kDefaultGuardrail);

// ----------------------------------------------------------------------
// L-polynomials
// ----------------------------------------------------------------------

struct LPolynomial {
  int64_t q = 0;
  std::vector<ExpTally> c;  // coefficients 0..degree, c[0] = 1
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

// generic: coefficients up to max_deg by direct summation
LPolynomial l_polynomial(int64_t q, int max_deg, const CharEval& chi,
                         int64_t guardrail = kDefaultGuardrail);

// quadratic chi_P for monic irreducible P: degree deg(P) - 1
LPolynomial l_polynomial_quadratic(const Poly& p, int64_t guardrail = kDefaultGuardrail);

// nontrivial Dirichlet chi mod Q: degree at most deg(Q) - 1
LPolynomial l_polynomial_dirichlet(const CharGroup& g, const CharGroup::Char& chi,
                                   int64_t guardrail = kDefaultGuardrail);

// nontrivial super-even Xi: degree = swan conductor d(Xi)
LPolynomial l_polynomial_supereven(const SectorGroup& g, const SectorGroup::Char& xi,
                                   int64_t guardrail = kDefaultGuardrail);

// exact power-series coefficients from L itself
// [u^n] L^k for n = 0..max_n
std::vector<ExpTally> l_power_coeffs(const LPolynomial& l, int k, int max_n);
// [u^n] (u L'/L)^k for n = 0..max_n (k = 1 gives M(n; Lambda chi))
std::vector<ExpTally> log_derivative_power_coeffs(const LPolynomial& l, int k, int max_n);

// ----------------------------------------------------------------------
// unitarized spectrum
// ----------------------------------------------------------------------

struct FrobeniusSpectrum {
  int dimension = 0;      // N = deg L - trivial_zeros
  int trivial_zeros = 0;  // lambda
  double rh_residual = 0.0;
  std::vector<double> angles;                    // eigenangles of Theta, sorted
  std::vector<std::complex<double>> secular;     // Sc_0..Sc_N, exact from coefficients
  std::complex<double> trace(int m) const;       // Tr Theta^m from the angles
};

// trivial_zeros: 0 for odd characters, 1 for even and super-even ones.
// Throws IdentityError if a trivial zero is missing or any unitarized
// inverse root leaves the unit circle by more than rh_tol.
FrobeniusSpectrum frobenius_spectrum(const LPolynomial& l, int trivial_zeros,
                                     double rh_tol = 1e-8);

// spectral composition sums over Theta (the pure matrix shape):
//   secular channel: (-1)^n q^{n/2} sum_{j_1+...+j_k = n, 0 <= j_i <= N} prod Sc_{j_i}
//   trace channel:   (-1)^k q^{n/2} sum_{m_1+...+m_k = n, m_i >= 1} prod Tr(Theta^{m_i})
std::complex<double> spectral_secular_sum(const FrobeniusSpectrum& s, int64_t q, int n, int k);
std::complex<double> spectral_trace_sum(const FrobeniusSpectrum& s, int64_t q, int n, int k);

// same sums with the trivial-zero factor (1-u)^lambda folded back in; these
// match the exact coefficients tightly for every parity
std::complex<double> spectral_secular_sum_full(const FrobeniusSpectrum& s, int64_t q, int n,
                                               int k);
std::complex<double> spectral_trace_sum_full(const FrobeniusSpectrum& s, int64_t q, int n, int k);

// ----------------------------------------------------------------------
// three-way identity checks
// ----------------------------------------------------------------------

struct IdentityCheck {
  int n = 0;
  int k = 1;
  bool exact_match = false;  // direct sum == L-power coefficient, as tallies
  std::complex<double> exact_value;     // the common exact value, rendered
  std::complex<double> spectral_value;  // pure Theta composition
  double spectral_err = 0.0;
  double allowance = 0.0;  // 1e-6 q^{n/2}, plus the even-character slack
  bool even_slack_used = false;
  double full_err = 0.0;  // against the lambda-corrected composition
  bool ok = false;
};

// divisor channel: M(n; d_k chi) three ways
IdentityCheck verify_secular_identity(int64_t q, int n, int k, const LPolynomial& l,
                                      const CharEval& chi, int trivial_zeros,
                                      int64_t guardrail = kDefaultGuardrail);

// von Mangoldt channel: M(n; Lambda_k chi) three ways
IdentityCheck verify_trace_identity(int64_t q, int n, int k, const LPolynomial& l,
                                    const CharEval& chi, int trivial_zeros,
                                    int64_t guardrail = kDefaultGuardrail);

}  // namespace ffvar
