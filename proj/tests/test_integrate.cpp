// SPDX-License-Identifier: MIT
//
// The steppers are probed with two linear stand-in schemes. A nilpotent
// shift operator turns one step into the stability polynomial, whose
// coefficients must match the Taylor series through the design order; a
// time-only right-hand side checks that stage times and weights form a
// quadrature of the same order.
#include "doctest.h"

#include <cmath>
#include <vector>

#include "gdg/integrate.hpp"
#include "gdg/scheme.hpp"

using gdg::State;
using gdg::operator+;

namespace {

// advance() adds (dt / DT) * shift(u): one step of size DT applies the
// stability function R to the coefficient vector stored in component 0.
struct ShiftScheme {
  static constexpr double DT = 0.25;
  void prepare(const std::vector<State<1>>&, double) {}
  double cfl_dt() const { return 1e100; }
  State<1> advance(const std::vector<State<1>>& u, double dt, std::vector<State<1>>& out) {
    out.resize(u.size());
    for (size_t k = 0; k < u.size(); ++k) {
      out[k] = u[k];
      if (k > 0) gdg::axpy(dt / DT, u[k - 1], out[k]);
    }
    return {};
  }
};

std::vector<double> stability_coefficients(gdg::TimeIntegrator kind, int n) {
  ShiftScheme scheme;
  gdg::WorkerPool pool(1);
  gdg::Integrator<1, ShiftScheme> integ(scheme, pool, kind, 1.0);

  std::vector<State<1>> u(n, State<1>{});
  u[0][0] = 1.0;
  const double dt = integ.step(u, 0.0, ShiftScheme::DT);
  REQUIRE(dt == ShiftScheme::DT);

  std::vector<double> c(n);
  for (int k = 0; k < n; ++k) c[k] = u[k][0];
  return c;
}

// du/dt = t^power, detects wrong stage times immediately.
struct ClockScheme {
  int power = 2;
  double t_now = 0.0;
  void prepare(const std::vector<State<1>>&, double t) { t_now = t; }
  double cfl_dt() const { return 1e100; }
  State<1> advance(const std::vector<State<1>>& u, double dt, std::vector<State<1>>& out) {
    out = u;
    for (auto& v : out) v[0] += dt * std::pow(t_now, power);
    return {};
  }
};

} // namespace

TEST_CASE("forward Euler stability polynomial is 1 + z") {
  const auto c = stability_coefficients(gdg::TimeIntegrator::forward_euler, 4);
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c[2] == 0.0);
  CHECK(c[3] == 0.0);
}

TEST_CASE("three-stage stability polynomial matches the Taylor series") {
  const auto c = stability_coefficients(gdg::TimeIntegrator::ssprk33, 6);
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c[2] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(c[4] == 0.0);
  CHECK(c[5] == 0.0);
}

TEST_CASE("five-stage stability polynomial matches through fourth order") {
  const auto c = stability_coefficients(gdg::TimeIntegrator::ssprk54, 8);
  CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(c[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(c[2] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(c[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(c[4] == doctest::Approx(1.0 / 24.0).epsilon(1e-12));
  // Five stages leave a degree-5 remainder below the Taylor coefficient.
  CHECK(c[5] > 0.0);
  CHECK(c[5] < 1.0 / 24.0);
  CHECK(c[6] == 0.0);
  CHECK(c[7] == 0.0);
}

TEST_CASE("stage times form a quadrature of the design order") {
  gdg::WorkerPool pool(1);

  {
    ClockScheme scheme; // t^2 integrated exactly by a third-order method
    gdg::Integrator<1, ClockScheme> integ(scheme, pool, gdg::TimeIntegrator::ssprk33, 1.0);
    std::vector<State<1>> u(1, State<1>{});
    const double dt = integ.step(u, 0.0, 0.8);
    REQUIRE(dt == 0.8);
    CHECK(u[0][0] == doctest::Approx(std::pow(0.8, 3) / 3.0).epsilon(1e-14));
  }
  {
    ClockScheme scheme;
    scheme.power = 3; // t^3 integrated exactly by a fourth-order method
    gdg::Integrator<1, ClockScheme> integ(scheme, pool, gdg::TimeIntegrator::ssprk54, 1.0);
    std::vector<State<1>> u(1, State<1>{});
    const double dt = integ.step(u, 0.0, 0.8);
    REQUIRE(dt == 0.8);
    CHECK(u[0][0] == doctest::Approx(std::pow(0.8, 4) / 4.0).epsilon(1e-12));
  }
  {
    ClockScheme scheme; // nonzero start time
    gdg::Integrator<1, ClockScheme> integ(scheme, pool, gdg::TimeIntegrator::ssprk33, 1.0);
    std::vector<State<1>> u(1, State<1>{});
    integ.step(u, 2.0, 2.5);
    CHECK(u[0][0] == doctest::Approx((std::pow(2.5, 3) - std::pow(2.0, 3)) / 3.0).epsilon(1e-13));
  }
}

TEST_CASE("multi-step runs conserve mass up to the boundary ledger") {
  const gdg::GasModel gas(1.4);
  gdg::WorkerPool pool(2);
  const auto mesh = gdg::interval_mesh(0.0, 1.0, 24);
  const gdg::DgSpace<1> space(mesh, 2);
  const auto g = gdg::assemble(space, pool);

  const State<1> left{1.0, 0.0, 2.5};
  const State<1> right{0.125, 0.0, 0.25};
  std::vector<State<1>> u0(g.n);
  for (int i = 0; i < g.n; ++i)
    u0[i] = space.node(i)[0] < 0.5 ? left : right;

  std::vector<gdg::BoundaryRule<1>> rules(2);
  for (auto& r : rules) r.kind = gdg::BoundaryKind::dirichlet;
  rules[0].data = [=](const std::array<double, 1>&, double) { return left; };
  rules[1].data = [=](const std::array<double, 1>&, double) { return right; };

  const auto total = [&](const std::vector<State<1>>& v) {
    return gdg::mass_weighted_sum(g, v, pool);
  };
  const State<1> before = total(u0);

  for (const auto kind : {gdg::TimeIntegrator::ssprk33, gdg::TimeIntegrator::ssprk54}) {
    CAPTURE(static_cast<int>(kind));
    gdg::Scheme<1> scheme(gas, space, g, rules, gdg::SchemeKind::low, pool);
    gdg::Integrator<1> integ(scheme, pool, kind, 0.9);
    auto u = u0;
    double t = 0.0;
    for (int s = 0; s < 5; ++s) t += integ.step(u, t, 1.0);
    State<1> after = total(u);
    after = after + integ.boundary_ledger();
    for (int c = 0; c < 3; ++c)
      CHECK(after[c] == doctest::Approx(before[c]).epsilon(1e-12));
    for (const auto& v : u) CHECK(gas.admissible(v));
    integ.reset_ledger();
    for (int c = 0; c < 3; ++c) CHECK(integ.boundary_ledger()[c] == 0.0);
    CHECK(integ.kind() == kind);
    CHECK(integ.courant() == 0.9);
  }
}

TEST_CASE("stepping clamps at the stop time") {
  ClockScheme scheme;
  gdg::WorkerPool pool(1);
  gdg::Integrator<1, ClockScheme> integ(scheme, pool, gdg::TimeIntegrator::ssprk33, 1.0);

  std::vector<State<1>> u(1, State<1>{});
  double t = 0.0;
  int steps = 0;
  while (true) {
    const double dt = integ.step(u, t, 1.0);
    if (!(dt > 0.0)) break;
    t += dt;
    ++steps;
  }
  CHECK(steps == 1); // huge cfl: a single clamped step
  CHECK(t == 1.0);
  CHECK(integ.step(u, t, 1.0) == 0.0);
}
