// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "gdg/cases.hpp"
#include "gdg/scheme.hpp"

using gdg::GasModel;
using gdg::State;

TEST_CASE("spd inversion recovers the identity") {
  // A small Gram-like SPD matrix.
  const int n = 4;
  std::vector<double> m(n * n, 0.0), minv(n * n), work;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i * n + j] = 1.0 / (1.0 + std::abs(i - j)) + (i == j ? 2.0 : 0.0);
  gdg::invert_spd(n, m.data(), minv.data(), work);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += m[i * n + k] * minv[k * n + j];
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("cell mass solver inverts the quadrature Gram blocks") {
  gdg::WorkerPool pool(2);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  auto check_space = [&]<int dim>(const gdg::DgSpace<dim>& space) {
    const auto g = gdg::assemble(space, pool);
    const gdg::CellMassSolver<dim> mass(space, g, pool);
    const int npc = space.nodes_per_cell();
    REQUIRE(mass.block_size() == npc);

    for (int cell : {0, space.mesh().n_cells() - 1}) {
      const auto gram = gdg::CellMassSolver<dim>::cell_gram(space, cell);
      std::vector<State<dim>> rhs(npc), x(npc);
      for (auto& r : rhs)
        for (int k = 0; k < dim + 2; ++k) r[k] = unit(rng);

      mass.apply_inverse(cell, rhs.data(), x.data());
      for (int a = 0; a < npc; ++a)
        for (int k = 0; k < dim + 2; ++k) {
          double s = 0.0;
          for (int b = 0; b < npc; ++b) s += gram[a * npc + b] * x[b][k];
          CHECK(s == doctest::Approx(rhs[a][k]).epsilon(1e-11));
        }
    }
  };

  check_space(gdg::DgSpace<1>(gdg::interval_mesh(0.0, 1.0, 5), 3));
  {
    auto mesh = gdg::box_mesh({0, 0}, {2, 1}, 3, 2);
    mesh.vertices[5][0] += 0.07; // keep one cell genuinely bilinear
    check_space(gdg::DgSpace<2>(mesh, 2));
  }
}

TEST_CASE("mass solver blocks agree with the assembled graph blocks") {
  gdg::WorkerPool pool(1);
  const gdg::DgSpace<2> space(gdg::box_mesh({0, 0}, {1, 1}, 2, 2), 2);
  const auto g = gdg::assemble(space, pool);
  const int npc = space.nodes_per_cell();
  for (int cell = 0; cell < space.mesh().n_cells(); ++cell) {
    const auto gram = gdg::CellMassSolver<2>::cell_gram(space, cell);
    for (int a = 0; a < npc; ++a)
      for (int b = 0; b < npc; ++b) {
        const int e = g.find(space.dof(cell, a), space.dof(cell, b));
        REQUIRE(e >= 0);
        CHECK(gram[a * npc + b] == doctest::Approx(g.m_consistent[e]).epsilon(1e-13));
      }
  }
}

TEST_CASE("minimal viscosity factor marks collocated cross-cell pairs") {
  gdg::WorkerPool pool(1);
  for (int degree : {1, 2, 3}) {
    const gdg::DgSpace<2> space(gdg::box_mesh({0, 0}, {1, 1}, 3, 3), degree);
    const auto g = gdg::assemble(space, pool);
    const auto factor = gdg::min_viscosity_factor(space, g);

    for (int i = 0; i < g.n; ++i)
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        const bool same_cell = space.cell_of(i) == space.cell_of(j);
        const auto &xi = space.node(i), &xj = space.node(j);
        const double dist = std::hypot(xi[0] - xj[0], xi[1] - xj[1]);
        const bool twin = !same_cell && dist < 1e-12;

        if (!twin) {
          CHECK(factor[e] == 0.0);
        } else if (degree % 2 == 1) {
          CHECK(factor[e] == 1.0);
        } else {
          const double h = std::pow(0.5 * (g.m_lumped[i] + g.m_lumped[j]) / g.volume, 0.5);
          CHECK(factor[e] == doctest::Approx(std::sqrt(h)).epsilon(1e-13));
          CHECK(factor[e] < 1.0);
        }
      }
  }
}

TEST_CASE("entropy viscosity constant by degree") {
  CHECK(gdg::entropy_viscosity_constant(1) == 1.0);
  CHECK(gdg::entropy_viscosity_constant(2) == 0.5);
  CHECK(gdg::entropy_viscosity_constant(3) == 0.25);
}

TEST_CASE("indicator is zero on constants and bounded by one") {
  gdg::WorkerPool pool(2);
  const GasModel gas(1.4);
  const gdg::DgSpace<2> space(gdg::box_mesh({0, 0}, {1, 1}, 4, 4), 2);
  const auto g = gdg::assemble(space, pool);

  std::vector<State<2>> u(g.n, State<2>{1.3, 0.2, -0.4, 3.0});
  gdg::NodeCache cache;
  gdg::build_node_cache<2>(gas, u, true, pool, cache);
  std::vector<double> ind;
  gdg::entropy_indicator(gas, g, u, cache, pool, ind);
  for (double v : ind) CHECK(std::abs(v) < 1e-12);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (auto& v : u) {
    v[0] = 1.0 + 0.5 * std::abs(unit(rng));
    v[1] = unit(rng);
    v[2] = unit(rng);
    v[3] = GasModel::kinetic_energy(v) + 0.5 + std::abs(unit(rng));
  }
  gdg::build_node_cache<2>(gas, u, true, pool, cache);
  gdg::entropy_indicator(gas, g, u, cache, pool, ind);
  for (double v : ind) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("high-order viscosity blends between floor and first-order value") {
  gdg::WorkerPool pool(1);
  const GasModel gas(1.4);
  const gdg::DgSpace<1> space(gdg::interval_mesh(0.0, 1.0, 8), 2);
  const auto g = gdg::assemble(space, pool);
  const auto diag = gdg::build_diagonal(g);
  const auto factor = gdg::min_viscosity_factor(space, g);

  std::vector<State<1>> u(g.n, State<1>{1.0, 0.3, 2.0});
  gdg::NodeCache cache;
  gdg::build_node_cache<1>(gas, u, true, pool, cache);
  std::vector<State<1>> bstate(g.b_terms.size(), u[0]);
  gdg::GraphViscosity low;
  gdg::compute_low_viscosity(gas, g, diag, u, cache, bstate, pool, low);

  gdg::GraphViscosity high;
  std::vector<double> ind(g.n, 0.0);

  // Flat indicator: only the collocated-pair floor survives.
  gdg::compute_high_viscosity(g, diag, low, factor, ind, 0.5, pool, high);
  for (int i = 0; i < g.n; ++i) {
    double offdiag = 0.0;
    for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
      if (g.col_idx[e] == i) continue;
      CHECK(high.d[e] == doctest::Approx(low.d[e] * factor[e]).epsilon(1e-14));
      CHECK(high.d[e] <= low.d[e] * (1.0 + 1e-14));
      offdiag += high.d[e];
    }
    for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) {
      CHECK(high.d_b[t] == low.d_b[t]); // boundary viscosity is never reduced
      offdiag += high.d_b[t];
    }
    CHECK(high.d[diag[i]] == doctest::Approx(-offdiag).epsilon(1e-13));
  }

  // Saturated indicator: the full first-order viscosity returns.
  ind.assign(g.n, 1.0);
  gdg::compute_high_viscosity(g, diag, low, factor, ind, 2.0, pool, high);
  for (int i = 0; i < g.n; ++i)
    for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e)
      if (g.col_idx[e] != i) CHECK(high.d[e] == low.d[e]);
}

TEST_CASE("high-order step conserves through the consistent mass solve") {
  const gdg::VortexCase vc = gdg::make_vortex(1.0, 1.0 / 1.4);
  gdg::WorkerPool pool(2);
  const gdg::DgSpace<2> space(gdg::box_mesh({-5, -5}, {5, 5}, 8, 8), 2);
  const auto g = gdg::assemble(space, pool);
  auto rules = gdg::vortex_rules(vc, gdg::VortexBoundary::exact_dirichlet);

  std::vector<State<2>> u(space.n_dofs());
  for (int i = 0; i < space.n_dofs(); ++i) u[i] = vc(space.node(i), 0.0);

  gdg::Scheme<2> scheme(vc.gas, space, g, std::move(rules), gdg::SchemeKind::high, pool);
  scheme.prepare(u, 0.0);
  const double dt = 0.2 * scheme.cfl_dt();

  std::vector<State<2>> out;
  const State<2> bflux = scheme.advance(u, dt, out);

  const State<2> before = gdg::mass_weighted_sum(g, u, pool);
  const State<2> after = gdg::mass_weighted_sum(g, out, pool);
  for (int k = 0; k < 4; ++k) {
    const double scale = std::max(1.0, std::abs(before[k]));
    CHECK(std::abs(after[k] + bflux[k] - before[k]) <= 1e-11 * scale);
  }

  // The smooth interpolant must stay close to the unlimited solution: the
  // update is consistent, so one small step cannot move any node far.
  for (int i = 0; i < g.n; ++i) {
    REQUIRE(std::isfinite(out[i][0]));
    CHECK(std::abs(out[i][0] - u[i][0]) < 0.1);
  }
}
