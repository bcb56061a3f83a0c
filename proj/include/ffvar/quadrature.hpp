// Gauss-Legendre quadrature nodes.
//
// Nodes and weights are computed by Newton iteration on the Legendre
// polynomial recurrence; accurate to ~1e-15 for n <= 256.  Used by the
// exact-quadrature evaluation of matrix integrals and by the profile
// function gamma_2 (whose reduced integrand is a polynomial, so a small
// rule is already exact).

#pragma once

#include <vector>

namespace ffvar {

struct QuadNode {
  double x;
  double w;
};

// n-point rule on [-1, 1]
std::vector<QuadNode> gauss_legendre(int n);

// n-point rule mapped to [a, b]
std::vector<QuadNode> gauss_legendre(int n, double a, double b);

}  // namespace ffvar
