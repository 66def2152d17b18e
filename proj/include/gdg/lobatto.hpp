// SPDX-License-Identifier: MIT
// 1D reference machinery on [0,1]: Gauss-Lobatto collocation points, the
// Lagrange basis on those points, and Gauss-Legendre quadrature.
#pragma once

#include <vector>

namespace gdg {

// Gauss-Lobatto points for polynomial degree k (k+1 points, endpoints included).
std::vector<double> lobatto_points(int degree);

// n-point Gauss-Legendre rule on [0,1], exact for degree 2n-1. n <= 6.
struct QuadratureRule {
  std::vector<double> points, weights;
  int size() const { return static_cast<int>(points.size()); }
};
QuadratureRule gauss_rule(int n);

// Lagrange basis on a fixed 1D node set.
class Lagrange1D {
public:
  explicit Lagrange1D(std::vector<double> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }

  double value(int i, double x) const;
  double deriv(int i, double x) const;

  void values(double x, double* out) const;
  void derivs(double x, double* out) const;

private:
  std::vector<double> nodes_;
};

} // namespace gdg
