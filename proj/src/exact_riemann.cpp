// SPDX-License-Identifier: MIT
#include "gdg/exact_riemann.hpp"

#include <algorithm>
#include <cmath>

#include "gdg/check.hpp"

namespace gdg {
namespace {

// Pressure function of one wave family and its derivative in p.
// Shock branch (p > p0): (p - p0) sqrt(A/(p + B)); rarefaction branch:
// 2 a0/(gamma-1) ((p/p0)^((gamma-1)/(2 gamma)) - 1).
struct WaveFunction {
  double rho0, p0, a0;
  double gamma, gm1;

  double value(double p) const {
    if (p > p0) {
      const double a = 2.0 / ((gamma + 1.0) * rho0);
      const double b = gm1 / (gamma + 1.0) * p0;
      return (p - p0) * std::sqrt(a / (p + b));
    }
    const double z = gm1 / (2.0 * gamma);
    return 2.0 * a0 / gm1 * (std::pow(p / p0, z) - 1.0);
  }

  double slope(double p) const {
    if (p > p0) {
      const double a = 2.0 / ((gamma + 1.0) * rho0);
      const double b = gm1 / (gamma + 1.0) * p0;
      const double q = std::sqrt(a / (p + b));
      return q * (1.0 - 0.5 * (p - p0) / (p + b));
    }
    return std::pow(p / p0, -((gamma + 1.0) / (2.0 * gamma))) / (rho0 * a0);
  }
};

} // namespace

double RiemannFan::max_speed() const {
  return std::max({-head_l, head_r, 0.0});
}

RiemannFan solve_riemann(const GasModel& gas, const Primitive1D& left, const Primitive1D& right,
                         double tol, int max_iter) {
  GDG_REQUIRE(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 && right.p > 0.0,
              "riemann: non-positive input density or pressure");
  const double gamma = gas.gamma(), gm1 = gas.gm1();
  const double al = gas.sound_speed(left.rho, left.p);
  const double ar = gas.sound_speed(right.rho, right.p);
  const WaveFunction fl{left.rho, left.p, al, gamma, gm1};
  const WaveFunction fr{right.rho, right.p, ar, gamma, gm1};
  const double dv = right.v - left.v;

  RiemannFan fan{};
  fan.left = left;
  fan.right = right;
  fan.gamma = gamma;

  // Pressure positivity: phi(0+) = dv - 2 al/gm1 - 2 ar/gm1 >= 0 means the
  // states pull apart into vacuum; both waves are full rarefactions.
  if (dv >= 2.0 * al / gm1 + 2.0 * ar / gm1) {
    fan.vacuum = true;
    fan.p_star = 0.0;
    fan.v_star = 0.5 * (left.v + right.v); // inside the vacuum region, unused
    fan.rho_star_l = fan.rho_star_r = 0.0;
    fan.left_is_shock = fan.right_is_shock = false;
    fan.head_l = left.v - al;
    fan.tail_l = left.v + 2.0 * al / gm1;
    fan.head_r = right.v + ar;
    fan.tail_r = right.v - 2.0 * ar / gm1;
    return fan;
  }

  auto phi = [&](double p) { return fl.value(p) + fr.value(p) + dv; };

  // Bracket the root: phi is increasing, phi(0+) < 0 here.
  double lo = 0.0, hi = std::max(left.p, right.p);
  while (phi(hi) < 0.0) {
    lo = hi;
    hi *= 4.0;
    GDG_REQUIRE(hi < 1e300, "riemann: failed to bracket p*");
  }

  // Two-rarefaction value as the initial guess (exact if both waves rarefy).
  const double z = gm1 / (2.0 * gamma);
  double p = std::pow((al + ar - 0.5 * gm1 * dv) / (al / std::pow(left.p, z) + ar / std::pow(right.p, z)),
                      1.0 / z);
  p = std::clamp(p, lo + 1e-14 * hi, hi);

  int it = 0;
  for (; it < max_iter; ++it) {
    const double f = phi(p);
    if (f > 0.0)
      hi = p;
    else
      lo = p;
    const double df = fl.slope(p) + fr.slope(p);
    double p_next = p - f / df;
    if (!(p_next > lo && p_next < hi)) p_next = 0.5 * (lo + hi); // safeguard
    const double change = std::abs(p_next - p);
    p = p_next;
    if (change <= tol * p) break;
  }
  GDG_REQUIRE(it < max_iter, "riemann: Newton did not converge");

  fan.vacuum = false;
  fan.p_star = p;
  fan.v_star = 0.5 * (left.v + right.v) + 0.5 * (fr.value(p) - fl.value(p));
  fan.newton_iterations = it + 1;

  const double gp1 = gamma + 1.0;
  fan.left_is_shock = p > left.p;
  if (fan.left_is_shock) {
    const double pr = p / left.p;
    fan.rho_star_l = left.rho * (pr + gm1 / gp1) / (gm1 / gp1 * pr + 1.0);
    fan.head_l = fan.tail_l = left.v - al * std::sqrt(gp1 / (2.0 * gamma) * pr + gm1 / (2.0 * gamma));
  } else {
    fan.rho_star_l = left.rho * std::pow(p / left.p, 1.0 / gamma);
    const double a_star = al * std::pow(p / left.p, z);
    fan.head_l = left.v - al;
    fan.tail_l = fan.v_star - a_star;
  }

  fan.right_is_shock = p > right.p;
  if (fan.right_is_shock) {
    const double pr = p / right.p;
    fan.rho_star_r = right.rho * (pr + gm1 / gp1) / (gm1 / gp1 * pr + 1.0);
    fan.head_r = fan.tail_r = right.v + ar * std::sqrt(gp1 / (2.0 * gamma) * pr + gm1 / (2.0 * gamma));
  } else {
    fan.rho_star_r = right.rho * std::pow(p / right.p, 1.0 / gamma);
    const double a_star = ar * std::pow(p / right.p, z);
    fan.head_r = right.v + ar;
    fan.tail_r = fan.v_star + a_star;
  }
  return fan;
}

Primitive1D RiemannFan::sample(double xi) const {
  const double gm1 = gamma - 1.0;
  const double gp1 = gamma + 1.0;
  const GasModel gas(gamma);
  const double al = gas.sound_speed(left.rho, left.p);
  const double ar = gas.sound_speed(right.rho, right.p);

  if (vacuum) {
    if (xi <= head_l) return left;
    if (xi < tail_l) { // inside the left fan
      const double v = (2.0 * (al + 0.5 * gm1 * left.v) + 2.0 * xi) / gp1;
      const double a = v - xi;
      const double rho = left.rho * std::pow(a / al, 2.0 / gm1);
      return {rho, v, left.p * std::pow(a / al, 2.0 * gamma / gm1)};
    }
    if (xi <= tail_r) return {0.0, 0.0, 0.0}; // vacuum region
    if (xi < head_r) { // inside the right fan
      const double v = (2.0 * (-ar + 0.5 * gm1 * right.v) + 2.0 * xi) / gp1;
      const double a = xi - v;
      const double rho = right.rho * std::pow(a / ar, 2.0 / gm1);
      return {rho, v, right.p * std::pow(a / ar, 2.0 * gamma / gm1)};
    }
    return right;
  }

  if (xi <= v_star) { // left of the contact
    if (left_is_shock)
      return xi < head_l ? left : Primitive1D{rho_star_l, v_star, p_star};
    if (xi <= head_l) return left;
    if (xi >= tail_l) return {rho_star_l, v_star, p_star};
    const double v = (2.0 * (al + 0.5 * gm1 * left.v) + 2.0 * xi) / gp1;
    const double a = v - xi;
    return {left.rho * std::pow(a / al, 2.0 / gm1), v, left.p * std::pow(a / al, 2.0 * gamma / gm1)};
  }
  if (right_is_shock)
    return xi > head_r ? right : Primitive1D{rho_star_r, v_star, p_star};
  if (xi >= head_r) return right;
  if (xi <= tail_r) return {rho_star_r, v_star, p_star};
  const double v = (2.0 * (-ar + 0.5 * gm1 * right.v) + 2.0 * xi) / gp1;
  const double a = xi - v;
  return {right.rho * std::pow(a / ar, 2.0 / gm1), v, right.p * std::pow(a / ar, 2.0 * gamma / gm1)};
}

} // namespace gdg
