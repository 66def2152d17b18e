// SPDX-License-Identifier: MIT
//
// Polynomial reference solutions live inside the discrete space, so the
// interpolant reproduces them exactly and the norm values can be predicted
// in closed form.
#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "gdg/norms.hpp"

using gdg::State;
using gdg::operator*;

namespace {

// Tensor degree <= 2 per component, representable in a Q2 space.
State<2> poly_exact(const std::array<double, 2>& x, double) {
  State<2> u;
  u[0] = 2.0 + 0.3 * x[0] + 0.1 * x[1] + 0.05 * x[0] * x[1];
  u[1] = x[0] * x[0] - 0.4;
  u[2] = x[1] * x[1] + 0.5 * x[0];
  u[3] = 10.0 + x[0] * x[0] * x[1] * x[1];
  return u;
}

State<2> rest_exact(const std::array<double, 2>& x, double) {
  State<2> u{};
  u[0] = 1.5 + 0.25 * x[0];
  u[3] = 4.0 - x[1];
  return u;
}

} // namespace

TEST_CASE("interpolation hits the reference at every node") {
  const auto mesh = gdg::box_mesh({0.0, 0.0}, {1.0, 1.0}, 3, 2);
  const gdg::DgSpace<2> space(mesh, 2);
  std::vector<State<2>> u;
  gdg::interpolate(space, poly_exact, 0.0, u);
  REQUIRE(static_cast<int>(u.size()) == space.n_dofs());
  for (int i = 0; i < space.n_dofs(); ++i) {
    const auto ue = poly_exact(space.node(i), 0.0);
    for (int c = 0; c < 4; ++c) CHECK(u[i][c] == ue[c]);
  }
}

TEST_CASE("exact interpolants report zero error") {
  gdg::WorkerPool pool(2);
  const auto mesh = gdg::box_mesh({0.0, 0.0}, {1.0, 1.0}, 3, 3);
  const gdg::DgSpace<2> space(mesh, 2);
  std::vector<State<2>> u;
  gdg::interpolate(space, poly_exact, 0.0, u);
  const auto e = gdg::solution_error(space, u, poly_exact, 0.0, pool);
  CHECK(e.l1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(e.l2 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(e.linf == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("uniform relative scaling sums to three group errors") {
  gdg::WorkerPool pool(2);
  const auto mesh = gdg::box_mesh({0.2, -0.3}, {1.4, 0.9}, 4, 3);
  const gdg::DgSpace<2> space(mesh, 2);
  std::vector<State<2>> u;
  gdg::interpolate(space, poly_exact, 0.0, u);
  for (auto& v : u) v = 1.01 * v;
  const auto e = gdg::solution_error(space, u, poly_exact, 0.0, pool);
  // Each of the three groups contributes a relative error of exactly 0.01.
  CHECK(e.l1 == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(e.l2 == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(e.linf == doctest::Approx(0.03).epsilon(1e-12));
}

TEST_CASE("groups with a vanishing reference fall back to absolute norms") {
  gdg::WorkerPool pool(2);
  const auto mesh = gdg::box_mesh({0.0, 0.0}, {1.0, 1.0}, 3, 3);
  const gdg::DgSpace<2> space(mesh, 1);
  std::vector<State<2>> u;
  gdg::interpolate(space, rest_exact, 0.0, u);
  for (auto& v : u) v[1] += 0.002; // momentum error against a zero reference
  const auto e = gdg::solution_error(space, u, rest_exact, 0.0, pool);
  CHECK(std::isfinite(e.l1));
  CHECK(std::isfinite(e.l2));
  CHECK(std::isfinite(e.linf));
  // Unit volume: absolute L1/L2/Linf of a constant are all the constant.
  CHECK(e.l1 == doctest::Approx(0.002).epsilon(1e-13));
  CHECK(e.l2 == doctest::Approx(0.002).epsilon(1e-13));
  CHECK(e.linf == doctest::Approx(0.002).epsilon(1e-13));
}

TEST_CASE("norm evaluation does not depend on the worker count") {
  const auto mesh = gdg::box_mesh({0.0, 0.0}, {2.0, 1.0}, 5, 4);
  const gdg::DgSpace<2> space(mesh, 2);
  std::vector<State<2>> u;
  gdg::interpolate(space, poly_exact, 0.0, u);
  for (auto& v : u) v = 1.003 * v;

  gdg::WorkerPool p1(1), p4(4);
  const auto a = gdg::solution_error(space, u, poly_exact, 0.0, p1);
  const auto b = gdg::solution_error(space, u, poly_exact, 0.0, p4);
  CHECK(a.l1 == b.l1);
  CHECK(a.l2 == b.l2);
  CHECK(a.linf == b.linf);
}
