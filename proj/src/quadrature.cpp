#include "ffvar/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ffvar {

namespace {

// Legendre P_n(x) and its derivative via the three-term recurrence.
void legendre(int n, double x, double* p, double* dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  *p = p1;
  *dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

std::vector<QuadNode> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  std::vector<QuadNode> nodes(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess for the i-th root, descending in x
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0, dp = 1;
    for (int it = 0; it < 64; ++it) {
      legendre(n, x, &p, &dp);
      double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    legendre(n, x, &p, &dp);
    nodes[i].x = x;
    nodes[i].w = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return nodes;
}

std::vector<QuadNode> gauss_legendre(int n, double a, double b) {
  std::vector<QuadNode> nodes = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (QuadNode& q : nodes) {
    q.x = mid + half * q.x;
    q.w *= half;
  }
  return nodes;
}

}  // namespace ffvar
