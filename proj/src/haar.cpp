#include "ffvar/haar.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ffvar/errors.hpp"
#include "ffvar/quadrature.hpp"

namespace ffvar {

namespace {

using Cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// quaternionic partner of a column vector (x, y) in C^{2N}: (-conj(y), conj(x))
Eigen::VectorXcd quaternion_partner(const Eigen::VectorXcd& v) {
  const Eigen::Index half = v.size() / 2;
  Eigen::VectorXcd w(v.size());
  for (Eigen::Index i = 0; i < half; ++i) {
    w(i) = -std::conj(v(half + i));
    w(half + i) = std::conj(v(i));
  }
  return w;
}

}  // namespace

HaarSampler::HaarSampler(MatrixGroup group, int64_t N, uint64_t seed)
    : group_(group), n_(N), rng_(seed) {
  if (N < 1 || N > 64) throw GuardrailError("HaarSampler: N out of range [1, 64]");
}

std::vector<Cplx> HaarSampler::sample_eigenvalues() {
  if (group_ == MatrixGroup::unitary) {
    // QR of a complex Ginibre matrix, with R-diagonal phases folded into Q
    Eigen::MatrixXcd x(n_, n_);
    for (Eigen::Index i = 0; i < n_; ++i)
      for (Eigen::Index j = 0; j < n_; ++j) x(i, j) = Cplx(gauss_(rng_), gauss_(rng_));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n_; ++j) {
      Cplx d = r(j, j);
      q.col(j) *= d / std::abs(d);
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(q, /*computeEigenvectors=*/false);
    std::vector<Cplx> eig(n_);
    for (Eigen::Index i = 0; i < n_; ++i) eig[i] = es.eigenvalues()(i);
    return eig;
  }

  // symplectic: orthonormalize random columns together with their
  // quaternionic partners (Gram-Schmidt over the quaternions)
  const Eigen::Index dim = 2 * n_;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index j = 0; j < n_; ++j) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Cplx(gauss_(rng_), gauss_(rng_));
    for (int pass = 0; pass < 2; ++pass) {  // re-orthogonalize for stability
      for (Eigen::Index c = 0; c < j; ++c) {
        v -= u.col(c).dot(v) * u.col(c);
        v -= u.col(n_ + c).dot(v) * u.col(n_ + c);
      }
    }
    v.normalize();
    u.col(j) = v;
    u.col(n_ + j) = quaternion_partner(v);
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(u, /*computeEigenvectors=*/false);
  std::vector<Cplx> eig(dim);
  for (Eigen::Index i = 0; i < dim; ++i) eig[i] = es.eigenvalues()(i);
  return eig;
}

std::vector<double> eigenangles(const std::vector<Cplx>& eig) {
  std::vector<double> a;
  a.reserve(eig.size());
  for (const Cplx& z : eig) {
    double t = std::arg(z);
    if (t < 0) t += 2 * kPi;
    a.push_back(t);
  }
  std::sort(a.begin(), a.end());
  return a;
}

std::vector<Cplx> secular_coefficients(const std::vector<Cplx>& eig, int64_t n) {
  // truncated product of (1 + x lambda_i)
  std::vector<Cplx> c(static_cast<size_t>(n) + 1, Cplx(0));
  c[0] = Cplx(1);
  size_t top = 0;
  for (const Cplx& lam : eig) {
    top = std::min(top + 1, static_cast<size_t>(n));
    for (size_t d = top; d >= 1; --d) c[d] += lam * c[d - 1];
  }
  return c;
}

std::vector<Cplx> power_traces(const std::vector<Cplx>& eig, int64_t n) {
  std::vector<Cplx> t(static_cast<size_t>(std::max<int64_t>(n, 0)) + 1, Cplx(0));
  std::vector<Cplx> pw(eig.size(), Cplx(1));
  for (int64_t j = 1; j <= n; ++j) {
    Cplx s(0);
    for (size_t i = 0; i < eig.size(); ++i) {
      pw[i] *= eig[i];
      s += pw[i];
    }
    t[static_cast<size_t>(j)] = s;
  }
  return t;
}

std::complex<double> composition_value(const std::vector<Cplx>& eig, SymbolKind kind, int64_t k,
                                       int64_t n) {
  if (k < 1 || n < 0) throw WindowError("composition_value: need k >= 1, n >= 0");
  // base series: secular coefficients (from degree 0) or traces (degree >= 1)
  std::vector<Cplx> base = (kind == SymbolKind::secular) ? secular_coefficients(eig, n)
                                                         : power_traces(eig, n);
  if (kind == SymbolKind::trace) base[0] = Cplx(0);
  std::vector<Cplx> acc(static_cast<size_t>(n) + 1, Cplx(0));
  acc[0] = Cplx(1);
  for (int64_t rep = 0; rep < k; ++rep) {
    std::vector<Cplx> next(static_cast<size_t>(n) + 1, Cplx(0));
    for (size_t i = 0; i <= static_cast<size_t>(n); ++i) {
      if (acc[i] == Cplx(0)) continue;
      for (size_t j = 0; i + j <= static_cast<size_t>(n); ++j) next[i + j] += acc[i] * base[j];
    }
    acc = std::move(next);
  }
  return acc[static_cast<size_t>(n)];
}

double functional_value(const std::vector<Cplx>& eig, const CompositionFunctional& f) {
  Cplx v = composition_value(eig, f.kind, f.k, f.n);
  return f.squared ? std::norm(v) : v.real();
}

double product_moment_value(const std::vector<Cplx>& eig, const std::map<int64_t, int64_t>& a,
                            const std::map<int64_t, int64_t>& b) {
  int64_t top = 0;
  for (const auto& [j, e] : a) top = std::max(top, j);
  for (const auto& [j, e] : b) top = std::max(top, j);
  std::vector<Cplx> t = power_traces(eig, top);
  Cplx v(1);
  for (const auto& [j, e] : a)
    for (int64_t r = 0; r < e; ++r) v *= t[static_cast<size_t>(j)];
  for (const auto& [j, e] : b)
    for (int64_t r = 0; r < e; ++r) v *= std::conj(t[static_cast<size_t>(j)]);
  return v.real();
}

IntegralValue mc_integral(MatrixGroup group, int64_t N,
                          const std::function<double(const std::vector<Cplx>&)>& f,
                          uint64_t samples, uint64_t seed) {
  if (samples < 2) throw WindowError("mc_integral: need at least two samples");
  HaarSampler sampler(group, N, seed);
  double sum = 0, sum_sq = 0;
  for (uint64_t s = 0; s < samples; ++s) {
    double v = f(sampler.sample_eigenvalues());
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  return IntegralValue::mc_estimate(mean, std::sqrt(var / static_cast<double>(samples)), samples,
                                    seed);
}

IntegralValue mc_integral(MatrixGroup group, int64_t N, const CompositionFunctional& f,
                          uint64_t samples, uint64_t seed) {
  return mc_integral(
      group, N, [&f](const std::vector<Cplx>& eig) { return functional_value(eig, f); }, samples,
      seed);
}

namespace {

// one pass of the tensor-product rule at `nodes` points per dimension
double weyl_pass(MatrixGroup group, int64_t N,
                 const std::function<double(const std::vector<Cplx>&)>& f, int nodes) {
  const double hi = (group == MatrixGroup::unitary) ? 2 * kPi : kPi;
  const std::vector<QuadNode> gl = gauss_legendre(nodes, 0.0, hi);
  std::vector<int> idx(static_cast<size_t>(N), 0);
  std::vector<double> theta(static_cast<size_t>(N));
  std::vector<Cplx> eig;
  double num = 0, den = 0;
  while (true) {
    double w = 1;
    for (int64_t d = 0; d < N; ++d) {
      theta[static_cast<size_t>(d)] = gl[static_cast<size_t>(idx[static_cast<size_t>(d)])].x;
      w *= gl[static_cast<size_t>(idx[static_cast<size_t>(d)])].w;
    }
    // eigenangle density (up to the normalization the ratio cancels)
    double dens = 1;
    if (group == MatrixGroup::unitary) {
      for (int64_t i = 0; i < N; ++i)
        for (int64_t j = i + 1; j < N; ++j) {
          double d2 = std::norm(std::polar(1.0, theta[static_cast<size_t>(i)]) -
                                std::polar(1.0, theta[static_cast<size_t>(j)]));
          dens *= d2;
        }
      eig.assign(static_cast<size_t>(N), Cplx(0));
      for (int64_t i = 0; i < N; ++i) eig[static_cast<size_t>(i)] = std::polar(1.0, theta[static_cast<size_t>(i)]);
    } else {
      for (int64_t i = 0; i < N; ++i) {
        double s = std::sin(theta[static_cast<size_t>(i)]);
        dens *= 4 * s * s;
      }
      for (int64_t i = 0; i < N; ++i)
        for (int64_t j = i + 1; j < N; ++j) {
          double d = 2 * std::cos(theta[static_cast<size_t>(i)]) -
                     2 * std::cos(theta[static_cast<size_t>(j)]);
          dens *= d * d;
        }
      eig.assign(static_cast<size_t>(2 * N), Cplx(0));
      for (int64_t i = 0; i < N; ++i) {
        eig[static_cast<size_t>(2 * i)] = std::polar(1.0, theta[static_cast<size_t>(i)]);
        eig[static_cast<size_t>(2 * i + 1)] = std::polar(1.0, -theta[static_cast<size_t>(i)]);
      }
    }
    num += w * dens * f(eig);
    den += w * dens;
    // odometer
    int64_t d = 0;
    while (d < N) {
      if (++idx[static_cast<size_t>(d)] < static_cast<int>(gl.size())) break;
      idx[static_cast<size_t>(d)] = 0;
      ++d;
    }
    if (d == N) break;
  }
  return num / den;
}

}  // namespace

IntegralValue weyl_quadrature(MatrixGroup group, int64_t N,
                              const std::function<double(const std::vector<Cplx>&)>& f,
                              double tol) {
  if (N < 1 || N > 3)
    throw GuardrailError("weyl_quadrature: tensor rule supports 1 <= N <= 3 eigenangles");
  double prev = weyl_pass(group, N, f, 12);
  for (int nodes = 24; nodes <= 192; nodes *= 2) {
    double cur = weyl_pass(group, N, f, nodes);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) {
      IntegralValue out = IntegralValue::mc_estimate(cur, std::abs(cur - prev),
                                                     static_cast<uint64_t>(nodes), 0);
      return out;
    }
    prev = cur;
  }
  throw IdentityError("weyl_quadrature: node doubling did not converge to tolerance");
}

IntegralValue weyl_quadrature(MatrixGroup group, int64_t N, const CompositionFunctional& f,
                              double tol) {
  return weyl_quadrature(
      group, N, [&f](const std::vector<Cplx>& eig) { return functional_value(eig, f); }, tol);
}

}  // namespace ffvar
