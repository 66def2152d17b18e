// SPDX-License-Identifier: MIT
// Guaranteed upper bound on the maximum wave speed of the projected 1D
// Riemann problem. The pressure in the star region is estimated with the
// two-rarefaction closure, which can only overestimate the exact p* (the
// rarefaction branch of the pressure function lies below the shock branch
// above p_Z), and the one-sided extreme-speed formulas are monotone in p,
// so the returned bound dominates the exact speed in exact arithmetic.
#pragma once

#include <algorithm>
#include <cmath>

#include "gdg/gas.hpp"

namespace gdg {

// Projected one-sided trace. pz caches p^((gamma-1)/(2 gamma)) so the edge
// loop stays free of transcendentals for gamma = 7/5 and 5/3.
struct WaveTrace {
  double rho, vn, p, a, pz;
};

inline double entropy_exponent(const GasModel& gas) {
  return gas.gm1() / (2.0 * gas.gamma());
}

template <int dim>
WaveTrace make_wave_trace(const GasModel& gas, const State<dim>& u, const double* n) {
  double mn = 0.0;
  for (int k = 0; k < dim; ++k) mn += u[1 + k] * n[k];
  const double p = gas.pressure(u);
  return {u[0], mn / u[0], p, gas.sound_speed(u[0], p), std::pow(p, entropy_exponent(gas))};
}

// max(|lambda_1^-|, |lambda_3^+|) evaluated at the two-rarefaction pressure.
inline double max_wavespeed(const GasModel& gas, const WaveTrace& L, const WaveTrace& R) {
  const double gm1 = gas.gm1();
  const double shock_slope = (gas.gamma() + 1.0) / (2.0 * gas.gamma());

  // Two-rarefaction estimate; a non-positive numerator means the states pull
  // apart into (near-)vacuum and the extreme speeds are the rarefaction heads.
  const double num = L.a + R.a - 0.5 * gm1 * (R.vn - L.vn);
  double excess_l = 0.0, excess_r = 0.0; // (p_hat - p_Z)+ / p_Z
  if (num > 0.0) {
    const double ratio = num / (L.a / L.pz + R.a / R.pz);
    double p_hat;
    if (gas.exponent_den() > 0) {
      // gamma = n/d  =>  2 gamma/(gamma-1) = 2n/(n-d), integer for 7/5, 5/3.
      const int e2 = 2 * gas.exponent_num(), d2 = gas.exponent_num() - gas.exponent_den();
      p_hat = (e2 % d2 == 0) ? pow_int(ratio, e2 / d2)
                             : std::pow(ratio, static_cast<double>(e2) / d2);
    } else {
      p_hat = std::pow(ratio, 2.0 * gas.gamma() / gm1);
    }
    excess_l = std::max((p_hat - L.p) / L.p, 0.0);
    excess_r = std::max((p_hat - R.p) / R.p, 0.0);
  }
  const double lambda_l = L.vn - L.a * std::sqrt(1.0 + shock_slope * excess_l);
  const double lambda_r = R.vn + R.a * std::sqrt(1.0 + shock_slope * excess_r);
  return std::max(-lambda_l, lambda_r);
}

template <int dim>
double max_wavespeed(const GasModel& gas, const State<dim>& ul, const State<dim>& ur,
                     const double* n) {
  return max_wavespeed(gas, make_wave_trace<dim>(gas, ul, n), make_wave_trace<dim>(gas, ur, n));
}

} // namespace gdg
