// SPDX-License-Identifier: MIT
// Exact solver for the 1D Riemann problem of the compressible Euler
// equations (ideal gas). Used as the reference for the wavespeed-dominance
// tests and to evaluate exact solutions of the Riemann-type 1D benchmarks.
// It is never called by the discretization itself.
#pragma once

#include <array>

#include "gdg/gas.hpp"

namespace gdg {

struct Primitive1D {
  double rho, v, p;
};

struct RiemannFan {
  Primitive1D left, right;    // input data
  double gamma;
  double p_star, v_star;      // intermediate pressure / velocity
  double rho_star_l, rho_star_r;
  bool left_is_shock, right_is_shock;
  bool vacuum;                // pressure positivity fails between the waves
  double head_l, tail_l;      // 1-wave characteristic speeds (equal for a shock)
  double head_r, tail_r;      // 3-wave
  int newton_iterations;

  double max_speed() const;   // max |signal speed|, zero-safe
  // Self-similar state at xi = x/t.
  Primitive1D sample(double xi) const;
};

// Newton iteration on the pressure function with a bisection safeguard;
// converges to |dp| <= tol * p within max_iter or throws.
RiemannFan solve_riemann(const GasModel& gas, const Primitive1D& left, const Primitive1D& right,
                         double tol = 1e-12, int max_iter = 100);

template <int dim>
Primitive1D primitive_from_state(const GasModel& gas, const State<dim>& u, const double* n) {
  double mn = 0.0;
  for (int k = 0; k < dim; ++k) mn += u[1 + k] * n[k];
  return {u[0], mn / u[0], gas.pressure(u)};
}

inline State<1> state_from_primitive(const GasModel& gas, const Primitive1D& w) {
  return {w.rho, w.rho * w.v, w.p * gas.inv_gm1() + 0.5 * w.rho * w.v * w.v};
}

} // namespace gdg
