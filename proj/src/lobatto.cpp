// SPDX-License-Identifier: MIT
#include "gdg/lobatto.hpp"

#include <cmath>

#include "gdg/check.hpp"

namespace gdg {

std::vector<double> lobatto_points(int degree) {
  switch (degree) {
    case 1:
      return {0.0, 1.0};
    case 2:
      return {0.0, 0.5, 1.0};
    case 3: {
      const double d = 0.5 / std::sqrt(5.0);
      return {0.0, 0.5 - d, 0.5 + d, 1.0};
    }
    default:
      GDG_REQUIRE(false, "lobatto_points: unsupported degree " << degree);
  }
}

QuadratureRule gauss_rule(int n) {
  // Abscissae/weights on [-1,1]; only one half listed, mirrored below.
  static const double x2[] = {0.5773502691896257645091488};
  static const double w2[] = {1.0};
  static const double x3[] = {0.0, 0.7745966692414833770358531};
  static const double w3[] = {0.8888888888888888888888889, 0.5555555555555555555555556};
  static const double x4[] = {0.3399810435848562648026658, 0.8611363115940525752239465};
  static const double w4[] = {0.6521451548625461426269361, 0.3478548451374538573730639};
  static const double x5[] = {0.0, 0.5384693101056830910363144, 0.9061798459386639927976269};
  static const double w5[] = {0.5688888888888888888888889, 0.4786286704993664680412915,
                              0.2369268850561890875142640};
  static const double x6[] = {0.2386191860831969086305017, 0.6612093864662645136613996,
                              0.9324695142031520278123016};
  static const double w6[] = {0.4679139345726910473898703, 0.3607615730481386075698335,
                              0.1713244923791703450402961};

  const double* xs = nullptr;
  const double* ws = nullptr;
  int half = 0;
  bool has_center = false;
  switch (n) {
    case 1: {
      QuadratureRule r;
      r.points = {0.5};
      r.weights = {1.0};
      return r;
    }
    case 2: xs = x2; ws = w2; half = 1; break;
    case 3: xs = x3; ws = w3; half = 2; has_center = true; break;
    case 4: xs = x4; ws = w4; half = 2; break;
    case 5: xs = x5; ws = w5; half = 3; has_center = true; break;
    case 6: xs = x6; ws = w6; half = 3; break;
    default:
      GDG_REQUIRE(false, "gauss_rule: unsupported point count " << n);
  }

  QuadratureRule r;
  for (int i = half - 1; i >= (has_center ? 1 : 0); --i) {
    r.points.push_back(0.5 * (1.0 - xs[i]));
    r.weights.push_back(0.5 * ws[i]);
  }
  if (has_center) {
    r.points.push_back(0.5);
    r.weights.push_back(0.5 * ws[0]);
  }
  for (int i = (has_center ? 1 : 0); i < half; ++i) {
    r.points.push_back(0.5 * (1.0 + xs[i]));
    r.weights.push_back(0.5 * ws[i]);
  }
  return r;
}

Lagrange1D::Lagrange1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  GDG_REQUIRE(!nodes_.empty(), "lagrange: empty node set");
}

double Lagrange1D::value(int i, double x) const {
  double v = 1.0;
  for (int j = 0; j < size(); ++j)
    if (j != i) v *= (x - nodes_[j]) / (nodes_[i] - nodes_[j]);
  return v;
}

double Lagrange1D::deriv(int i, double x) const {
  // d/dx prod_j (x-x_j)/(x_i-x_j) by the product rule.
  double d = 0.0;
  for (int m = 0; m < size(); ++m) {
    if (m == i) continue;
    double term = 1.0 / (nodes_[i] - nodes_[m]);
    for (int j = 0; j < size(); ++j)
      if (j != i && j != m) term *= (x - nodes_[j]) / (nodes_[i] - nodes_[j]);
    d += term;
  }
  return d;
}

void Lagrange1D::values(double x, double* out) const {
  for (int i = 0; i < size(); ++i) out[i] = value(i, x);
}

void Lagrange1D::derivs(double x, double* out) const {
  for (int i = 0; i < size(); ++i) out[i] = deriv(i, x);
}

} // namespace gdg
