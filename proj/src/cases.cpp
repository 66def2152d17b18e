// SPDX-License-Identifier: MIT
#include "gdg/cases.hpp"

#include <cmath>

namespace gdg {

State<2> VortexCase::operator()(const std::array<double, 2>& x, double t) const {
  const double g = gas.gamma();
  const double pi = 3.14159265358979323846;
  const double x1 = x[0] - center[0] - v_inf[0] * t;
  const double x2 = x[1] - center[1] - v_inf[1] * t;
  const double r2 = x1 * x1 + x2 * x2;
  const double temp = t_inf - gas.gm1() * beta * beta / (8.0 * g * pi * pi) * std::exp(1.0 - r2);
  const double swirl = beta / (2.0 * pi) * std::exp(0.5 * (1.0 - r2));
  const double v1 = v_inf[0] - swirl * x2;
  const double v2 = v_inf[1] + swirl * x1;
  const double rho = rho_inf * std::pow(temp / t_inf, gas.inv_gm1());
  const double p = rho * temp;
  return {rho, rho * v1, rho * v2, p * gas.inv_gm1() + 0.5 * rho * (v1 * v1 + v2 * v2)};
}

State<2> VortexCase::far_field() const {
  const double p = rho_inf * t_inf;
  const double ke = 0.5 * rho_inf * (v_inf[0] * v_inf[0] + v_inf[1] * v_inf[1]);
  return {rho_inf, rho_inf * v_inf[0], rho_inf * v_inf[1], p * gas.inv_gm1() + ke};
}

VortexCase make_vortex(double mach, double t_inf) {
  VortexCase vc;
  vc.t_inf = t_inf;
  const double a_inf = std::sqrt(vc.gas.gamma() * t_inf);
  vc.v_inf = {mach * a_inf, mach * a_inf};
  return vc;
}

BoundaryRules<2> vortex_rules(const VortexCase& vc, VortexBoundary strategy) {
  BoundaryRule<2> rule;
  switch (strategy) {
    case VortexBoundary::exact_dirichlet:
      rule.kind = BoundaryKind::dirichlet;
      rule.data = vc;
      break;
    case VortexBoundary::characteristic_exact:
      rule.kind = BoundaryKind::characteristic;
      rule.data = vc;
      break;
    case VortexBoundary::characteristic_farfield: {
      rule.kind = BoundaryKind::characteristic;
      const State<2> fs = vc.far_field();
      rule.data = [fs](const std::array<double, 2>&, double) { return fs; };
      break;
    }
    case VortexBoundary::characteristic_none:
      rule.kind = BoundaryKind::characteristic;
      break;
  }
  return BoundaryRules<2>(4, rule);
}

State<1> FanCase::operator()(const std::array<double, 1>& x, double t) const {
  if (t <= 0.0)
    return state_from_primitive(gas, x[0] < x0 ? fan.left : fan.right);
  return state_from_primitive(gas, fan.sample((x[0] - x0) / t));
}

FanCase rarefaction_case(double rho_r) {
  GasModel gas(1.4);
  const double rho_l = 3.0, p_l = 1.0;
  const double a_l = gas.sound_speed(rho_l, p_l);
  const double p_r = p_l * std::pow(rho_r / rho_l, gas.gamma());
  const double a_r = gas.sound_speed(rho_r, p_r);
  const Primitive1D left{rho_l, a_l, p_l};
  const Primitive1D right{rho_r, a_l + 2.0 * gas.inv_gm1() * (a_l - a_r), p_r};
  return {gas, solve_riemann(gas, left, right), 0.2};
}

FanCase leblanc_case() {
  GasModel gas(5.0 / 3.0);
  const Primitive1D left{1.0, 0.0, (2.0 / 3.0) * 1e-1};
  const Primitive1D right{1e-3, 0.0, (2.0 / 3.0) * 1e-10};
  return {gas, solve_riemann(gas, left, right), 0.33};
}

BoundaryRules<1> fan_rules(const FanCase& fc) {
  BoundaryRule<1> rule;
  rule.kind = BoundaryKind::dirichlet;
  rule.data = fc;
  return BoundaryRules<1>(2, rule);
}

ChannelCase mach3_channel() {
  ChannelCase cc;
  const double rho = 1.4, p = 1.0, v = 3.0; // sound speed 1, Mach 3
  cc.free_stream = {rho, rho * v, 0.0, p * cc.gas.inv_gm1() + 0.5 * rho * v * v};
  return cc;
}

BoundaryRules<2> channel_rules(const ChannelCase& cc) {
  BoundaryRules<2> rules(5);
  rules[0].kind = BoundaryKind::dirichlet;
  const State<2> fs = cc.free_stream;
  rules[0].data = [fs](const std::array<double, 2>&, double) { return fs; };
  rules[1].kind = BoundaryKind::do_nothing;
  rules[2].kind = BoundaryKind::slip;
  rules[3].kind = BoundaryKind::slip;
  rules[4].kind = BoundaryKind::slip;
  return rules;
}

} // namespace gdg
