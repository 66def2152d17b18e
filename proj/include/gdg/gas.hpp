// SPDX-License-Identifier: MIT
// Pointwise compressible-Euler algebra for an ideal gas: conserved states,
// thermodynamics, fluxes, entropies. Everything here is cell- and mesh-free.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "gdg/check.hpp"

namespace gdg {

// Conserved state [rho, m_1..m_dim, E].
template <int dim>
using State = std::array<double, dim + 2>;

// The vector helpers deduce on the raw array length so they apply to any
// fixed-size double tuple (states, normals).
template <std::size_t n>
inline std::array<double, n> operator+(std::array<double, n> a, const std::array<double, n>& b) {
  for (std::size_t k = 0; k < n; ++k) a[k] += b[k];
  return a;
}

template <std::size_t n>
inline std::array<double, n> operator-(std::array<double, n> a, const std::array<double, n>& b) {
  for (std::size_t k = 0; k < n; ++k) a[k] -= b[k];
  return a;
}

template <std::size_t n>
inline std::array<double, n> operator*(double s, std::array<double, n> a) {
  for (std::size_t k = 0; k < n; ++k) a[k] *= s;
  return a;
}

template <std::size_t n>
inline void axpy(double s, const std::array<double, n>& x, std::array<double, n>& y) {
  for (std::size_t k = 0; k < n; ++k) y[k] += s * x[k];
}

// x^n by binary powers, n >= 0. Used for the rational-exponent fast paths.
inline double pow_int(double x, int n) {
  double r = 1.0;
  for (double b = x; n > 0; n >>= 1, b *= b)
    if (n & 1) r *= b;
  return r;
}

class GasModel {
public:
  explicit GasModel(double gamma) : gamma_(gamma) {
    GDG_REQUIRE(gamma > 1.0 && gamma <= 3.0, "gas model: gamma = " << gamma << " out of range (1, 3]");
    gm1_ = gamma - 1.0;
    inv_gm1_ = 1.0 / gm1_;
    // gamma as a small fraction num/den enables integer-power forms of the
    // entropy constraint and of the wavespeed estimate (exact for 7/5, 5/3).
    exp_num_ = exp_den_ = 0;
    for (int den = 1; den <= 8; ++den) {
      const double num = gamma * den;
      if (std::abs(num - std::round(num)) < 1e-12) {
        exp_num_ = static_cast<int>(std::round(num));
        exp_den_ = den;
        break;
      }
    }
  }

  double gamma() const { return gamma_; }
  double gm1() const { return gm1_; }
  double inv_gm1() const { return inv_gm1_; }

  // gamma = exponent_num()/exponent_den(), or den = 0 if not a small ratio.
  int exponent_num() const { return exp_num_; }
  int exponent_den() const { return exp_den_; }

  template <std::size_t n>
  static double kinetic_energy(const std::array<double, n>& u) {
    double m2 = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) m2 += u[k] * u[k];
    return 0.5 * m2 / u[0];
  }

  template <std::size_t n>
  static double internal_energy(const std::array<double, n>& u) {
    return u[n - 1] - kinetic_energy(u);
  }

  double pressure_from_internal_energy(double eps) const { return gm1_ * eps; }

  template <std::size_t n>
  double pressure(const std::array<double, n>& u) const {
    return gm1_ * internal_energy(u);
  }

  double sound_speed(double rho, double p) const { return std::sqrt(gamma_ * p / rho); }

  template <std::size_t n>
  double sound_speed(const std::array<double, n>& u) const {
    return sound_speed(u[0], pressure(u));
  }

  // Physical specific entropy s = log(rho^-gamma p).
  template <std::size_t n>
  double specific_entropy(const std::array<double, n>& u) const {
    return std::log(pressure(u)) - gamma_ * std::log(u[0]);
  }

  // rho^-gamma eps = exp(s)/(gamma-1); positive on admissible states and a
  // quasiconcave invariant-set function, which is what the limiter bounds.
  template <std::size_t n>
  double scaled_entropy(const std::array<double, n>& u) const {
    return internal_energy(u) * std::pow(u[0], -gamma_);
  }

  template <std::size_t n>
  bool admissible(const std::array<double, n>& u) const {
    if (!(u[0] > 0.0)) return false;
    const double eps = internal_energy(u);
    if (!(eps > 0.0)) return false;
    for (std::size_t k = 0; k < n; ++k)
      if (!std::isfinite(u[k])) return false;
    return true;
  }

  // f(u) . c for a direction/weight vector c (not necessarily unit):
  // [m.c, (m.c)/rho m + p c, (m.c)/rho (E + p)].
  template <std::size_t n>
  std::array<double, n> flux_dot(const std::array<double, n>& u, double p, const double* c) const {
    constexpr std::size_t dim = n - 2;
    double mc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) mc += u[1 + k] * c[k];
    const double vc = mc / u[0];
    std::array<double, n> f;
    f[0] = mc;
    for (std::size_t k = 0; k < dim; ++k) f[1 + k] = vc * u[1 + k] + p * c[k];
    f[n - 1] = vc * (u[n - 1] + p);
    return f;
  }

  template <std::size_t n>
  std::array<double, n> flux_dot(const std::array<double, n>& u, const double* c) const {
    return flux_dot(u, pressure(u), c);
  }

  // Full flux matrix, column k = f_k(u).
  template <std::size_t n>
  std::array<std::array<double, n>, n - 2> flux(const std::array<double, n>& u) const {
    constexpr std::size_t dim = n - 2;
    const double p = pressure(u);
    std::array<std::array<double, n>, dim> f;
    for (std::size_t k = 0; k < dim; ++k) {
      std::array<double, dim> c{};
      c[k] = 1.0;
      f[k] = flux_dot(u, p, c.data());
    }
    return f;
  }

  // Gradient with respect to the conserved state of rho s(u):
  //   d(rho s)/drho  = s - gamma + (gamma-1)|m|^2 / (2 rho p)
  //   d(rho s)/dm_k  = -(gamma-1) m_k / p
  //   d(rho s)/dE    =  (gamma-1) rho / p
  template <std::size_t n>
  std::array<double, n> grad_rho_entropy(const std::array<double, n>& u) const {
    const double p = pressure(u);
    const double s = std::log(p) - gamma_ * std::log(u[0]);
    std::array<double, n> g;
    g[0] = s - gamma_ + gm1_ * kinetic_energy(u) / p;
    for (std::size_t k = 1; k + 1 < n; ++k) g[k] = -gm1_ * u[k] / p;
    g[n - 1] = gm1_ * u[0] / p;
    return g;
  }

private:
  double gamma_, gm1_, inv_gm1_;
  int exp_num_, exp_den_;
};

} // namespace gdg
