// SPDX-License-Identifier: MIT
// Benchmark setups: exact solutions (or reference data) plus matching
// boundary rules. Everything returns plain values so runs can be assembled
// freely in the driver and in tests.
#pragma once

#include <array>

#include "gdg/boundary.hpp"
#include "gdg/exact_riemann.hpp"
#include "gdg/gas.hpp"

namespace gdg {

// Isentropic vortex advected across [-5,5]^2. With t_inf = 1/gamma the
// far-field sound speed is 1, so the center travels mach domain units per
// unit time in each direction. Temperature convention p = rho T.
struct VortexCase {
  GasModel gas{1.4};
  double beta = 5.0;
  double rho_inf = 1.0;
  double t_inf = 1.0 / 1.4;
  std::array<double, 2> v_inf{1.0, 1.0};
  std::array<double, 2> center{-1.0, -1.0};

  State<2> operator()(const std::array<double, 2>& x, double t) const;
  State<2> far_field() const;
};

VortexCase make_vortex(double mach, double t_inf);

// Boundary treatments compared in the vortex study, from strongest to
// weakest use of the exact solution.
enum class VortexBoundary {
  exact_dirichlet,          // Dirichlet everywhere with exact data
  characteristic_exact,     // characteristic blend against exact data
  characteristic_farfield,  // characteristic blend against the constant far field
  characteristic_none,      // characteristic blend against the current state
};

BoundaryRules<2> vortex_rules(const VortexCase& vc, VortexBoundary strategy);

// Self-similar solution of a Riemann problem on [0,1], offset to x0. At
// t <= 0 it degenerates to the initial two-state data.
struct FanCase {
  GasModel gas;
  RiemannFan fan;
  double x0;

  State<1> operator()(const std::array<double, 1>& x, double t) const;
};

// Single sonic rarefaction: left state (3, a_l, 1) moving at its own sound
// speed, right state on the same isentrope at density rho_r. The fan foot
// stays put at x0 = 0.2.
FanCase rarefaction_case(double rho_r = 0.5);

// Near-vacuum shock tube, gamma = 5/3, internal energy jump 0.1 to 1e-7,
// interface at x0 = 0.33.
FanCase leblanc_case();

// Exact Dirichlet data at both ends; the waves never reach them in the
// configured time windows.
BoundaryRules<1> fan_rules(const FanCase& fc);

// Mach 3 flow entering the cylinder channel.
struct ChannelCase {
  GasModel gas{1.4};
  State<2> free_stream;
};

ChannelCase mach3_channel();

// Inlet Dirichlet, slip on the walls and the cylinder, outlet left alone.
BoundaryRules<2> channel_rules(const ChannelCase& cc);

} // namespace gdg
