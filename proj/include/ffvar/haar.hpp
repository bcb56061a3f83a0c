// Haar-distributed random matrices from the unitary and compact symplectic
// groups, and numeric evaluation of spectral functionals over them.
//
// Sampling: a Haar unitary comes from the QR decomposition of a complex
// Ginibre matrix with the R-diagonal phases normalized away; a Haar
// symplectic-unitary matrix comes from quaternionic Gram-Schmidt, realized
// over C^{2N} by orthonormalizing random columns together with their
// quaternionic partners.
//
// Functionals: composition sums of secular coefficients (the coefficients
// of det(1 + xU)) or traces of powers, optionally absolutely squared.
// These are the integrands whose group averages the exact side predicts.
//
// Averages: plain Monte Carlo with a seeded generator and a standard-error
// estimate, or self-normalizing tensor Gauss-Legendre quadrature of the
// eigenangle density (Weyl integration), with node doubling until two
// successive refinements agree.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "ffvar/exact_rmt.hpp"
#include "ffvar/integral_value.hpp"

namespace ffvar {

enum class SymbolKind { secular, trace };

// the composition-sum functional  sum_{j_1+...+j_k = n} prod_i f_{j_i}(U),
// with f = secular coefficient (indices >= 0) or trace of powers
// (indices >= 1); `squared` takes the absolute square of the sum
struct CompositionFunctional {
  SymbolKind kind = SymbolKind::secular;
  int64_t k = 1;
  int64_t n = 0;
  bool squared = false;
};

class HaarSampler {
 public:
  // N is the number of independent eigenangles: the unitary group U(N) or
  // the compact symplectic group of 2N x 2N matrices
  HaarSampler(MatrixGroup group, int64_t N, uint64_t seed);

  // full spectrum of the next sample on the unit circle (N values for the
  // unitary group, 2N conjugate-paired values for the symplectic group)
  std::vector<std::complex<double>> sample_eigenvalues();

  MatrixGroup group() const { return group_; }
  int64_t dim() const { return n_; }

 private:
  MatrixGroup group_;
  int64_t n_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

// angles of a spectrum, in [0, 2pi), sorted ascending
std::vector<double> eigenangles(const std::vector<std::complex<double>>& eig);

// secular coefficients of det(1 + xU) up to degree n, from the spectrum
std::vector<std::complex<double>> secular_coefficients(
    const std::vector<std::complex<double>>& eig, int64_t n);

// traces of powers U^j for j = 1..n, from the spectrum
std::vector<std::complex<double>> power_traces(const std::vector<std::complex<double>>& eig,
                                               int64_t n);

// composition-sum value on a fixed spectrum (before any squaring)
std::complex<double> composition_value(const std::vector<std::complex<double>>& eig,
                                       SymbolKind kind, int64_t k, int64_t n);

// the real statistic the functional reports: |value|^2 when squared,
// otherwise the real part (symplectic spectra give real values exactly)
double functional_value(const std::vector<std::complex<double>>& eig,
                        const CompositionFunctional& f);

// product of trace powers  Re prod_j Tr(U^j)^{a_j} conj(Tr(U^j))^{b_j}
double product_moment_value(const std::vector<std::complex<double>>& eig,
                            const std::map<int64_t, int64_t>& a,
                            const std::map<int64_t, int64_t>& b = {});

// Monte Carlo average of an arbitrary spectral statistic
IntegralValue mc_integral(MatrixGroup group, int64_t N,
                          const std::function<double(const std::vector<std::complex<double>>&)>& f,
                          uint64_t samples, uint64_t seed);

// convenience overload for composition functionals
IntegralValue mc_integral(MatrixGroup group, int64_t N, const CompositionFunctional& f,
                          uint64_t samples, uint64_t seed);

// deterministic eigenangle-density quadrature (N <= 3); node count doubles
// until two refinements agree to `tol`, else an identity error is raised
IntegralValue weyl_quadrature(MatrixGroup group, int64_t N,
                              const std::function<double(const std::vector<std::complex<double>>&)>& f,
                              double tol = 1e-10);

IntegralValue weyl_quadrature(MatrixGroup group, int64_t N, const CompositionFunctional& f,
                              double tol = 1e-10);

}  // namespace ffvar
