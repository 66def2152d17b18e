// SPDX-License-Identifier: MIT
//
// The assembled stencil graph is checked two ways: structural identities
// that the schemes rely on (antisymmetry, zero row sums, mass consistency),
// and a slow independent reassembly with a higher-order quadrature.
#include "doctest.h"

#include <cmath>
#include <map>
#include <utility>

#include "gdg/graph.hpp"

using gdg::DgSpace;
using gdg::Mesh;
using gdg::StencilGraph;
using gdg::WorkerPool;

namespace {

template <int dim>
double shape_value(const DgSpace<dim>& sp, int local, const std::array<double, dim>& xi) {
  const auto t = sp.local_tuple(local);
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= sp.basis().value(t[a], xi[a]);
  return v;
}

template <int dim>
std::array<double, dim> shape_grad(const DgSpace<dim>& sp, int local,
                                   const std::array<double, dim>& xi) {
  const auto t = sp.local_tuple(local);
  std::array<double, dim> g;
  for (int a = 0; a < dim; ++a) {
    double v = 1.0;
    for (int b = 0; b < dim; ++b)
      v *= (a == b) ? sp.basis().deriv(t[b], xi[b]) : sp.basis().value(t[b], xi[b]);
    g[a] = v;
  }
  return g;
}

// Everything below re-derives the graph data with a (k+2)-point rule,
// integrating phi_i grad phi_j minus the half-face Gram inside a cell and the
// half-face coupling across faces.
template <int dim>
struct Oracle {
  std::map<std::pair<int, int>, std::array<double, dim>> c;
  std::map<std::pair<int, int>, double> m; // same-cell Gram entries
  std::map<std::pair<int, int>, std::array<double, dim>> b; // (dof, component)
  std::vector<double> lumped;

  explicit Oracle(const DgSpace<dim>& sp) : lumped(sp.n_dofs(), 0.0) {
    const auto quad = gdg::gauss_rule(sp.degree() + 2);
    const int npc = sp.nodes_per_cell();
    const auto& mesh = sp.mesh();

    for (int cell = 0; cell < mesh.n_cells(); ++cell) {
      const auto& map = sp.cell_map(cell);
      for (int li = 0; li < npc; ++li)
        for (int lj = 0; lj < npc; ++lj) {
          std::array<double, dim> cv{};
          double mv = 0.0;
          if constexpr (dim == 1) {
            for (int q = 0; q < quad.size(); ++q) {
              const std::array<double, 1> xi{quad.points[q]};
              const double w = quad.weights[q];
              cv[0] += w * shape_value(sp, li, xi) * shape_grad(sp, lj, xi)[0];
              mv += w * shape_value(sp, li, xi) * shape_value(sp, lj, xi) * map.det(xi);
            }
          } else {
            for (int qx = 0; qx < quad.size(); ++qx)
              for (int qy = 0; qy < quad.size(); ++qy) {
                const std::array<double, 2> xi{quad.points[qx], quad.points[qy]};
                const double w = quad.weights[qx] * quad.weights[qy];
                const double vi = shape_value(sp, li, xi);
                const auto g = map.cof_apply(xi, shape_grad(sp, lj, xi));
                cv[0] += w * vi * g[0];
                cv[1] += w * vi * g[1];
                mv += w * vi * shape_value(sp, lj, xi) * map.det(xi);
              }
          }
          for (int lf = 0; lf < 2 * dim; ++lf) {
            const auto wn = sp.face_weighted_normal(cell, lf);
            if constexpr (dim == 1) {
              const auto xi = sp.face_ref_point(lf, 0.0);
              const double pv = shape_value(sp, li, xi) * shape_value(sp, lj, xi);
              cv[0] -= 0.5 * pv * wn[0];
            } else {
              for (int q = 0; q < quad.size(); ++q) {
                const auto xi = sp.face_ref_point(lf, quad.points[q]);
                const double pv =
                    quad.weights[q] * shape_value(sp, li, xi) * shape_value(sp, lj, xi);
                for (int a = 0; a < 2; ++a) cv[a] -= 0.5 * pv * wn[a];
              }
            }
          }
          const int i = sp.dof(cell, li), j = sp.dof(cell, lj);
          c[{i, j}] = cv;
          m[{i, j}] = mv;
          lumped[i] += mv;
        }
    }

    for (const auto& f : gdg::interior_faces(mesh)) {
      for (int side = 0; side < 2; ++side) {
        const int c0 = f.cell[side], c1 = f.cell[1 - side];
        const int lf0 = f.local_face[side], lf1 = f.local_face[1 - side];
        const auto wn = sp.face_weighted_normal(c0, lf0);
        const auto loc0 = sp.face_locals(lf0), loc1 = sp.face_locals(lf1);
        for (int li : loc0)
          for (int lj : loc1) {
            std::array<double, dim> cv{};
            if constexpr (dim == 1) {
              const auto xi0 = sp.face_ref_point(lf0, 0.0);
              const auto xi1 = sp.face_ref_point(lf1, 0.0);
              cv[0] = 0.5 * shape_value(sp, li, xi0) * shape_value(sp, lj, xi1) * wn[0];
            } else {
              for (int q = 0; q < quad.size(); ++q) {
                const double t = quad.points[q];
                const auto xi0 = sp.face_ref_point(lf0, t);
                const auto xi1 = sp.face_ref_point(lf1, f.flipped ? 1.0 - t : t);
                const double pv =
                    quad.weights[q] * shape_value(sp, li, xi0) * shape_value(sp, lj, xi1);
                for (int a = 0; a < 2; ++a) cv[a] += 0.5 * pv * wn[a];
              }
            }
            c[{sp.dof(c0, li), sp.dof(c1, lj)}] = cv;
          }
      }
    }

    for (const auto& bf : mesh.boundary) {
      const auto wn = sp.face_weighted_normal(bf.cell, bf.local_face);
      for (int li : sp.face_locals(bf.local_face)) {
        std::array<double, dim> cv{};
        if constexpr (dim == 1) {
          const auto xi = sp.face_ref_point(bf.local_face, 0.0);
          cv[0] = 0.5 * shape_value(sp, li, xi) * wn[0];
        } else {
          for (int q = 0; q < quad.size(); ++q) {
            const auto xi = sp.face_ref_point(bf.local_face, quad.points[q]);
            const double pv = quad.weights[q] * shape_value(sp, li, xi);
            for (int a = 0; a < 2; ++a) cv[a] += 0.5 * pv * wn[a];
          }
        }
        auto& acc = b[{sp.dof(bf.cell, li), bf.component}];
        for (int a = 0; a < dim; ++a) acc[a] += cv[a];
      }
    }
  }
};

template <int dim>
void check_against_oracle(const DgSpace<dim>& sp, const StencilGraph<dim>& g) {
  const Oracle<dim> oracle(sp);

  REQUIRE(static_cast<size_t>(g.n_edges()) == oracle.c.size());
  for (int i = 0; i < g.n; ++i)
    for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
      const auto it = oracle.c.find({i, g.col_idx[e]});
      REQUIRE(it != oracle.c.end());
      for (int a = 0; a < dim; ++a) CHECK(std::abs(g.c[e][a] - it->second[a]) < 1e-13);

      const auto mt = oracle.m.find({i, g.col_idx[e]});
      const double m_ref = mt == oracle.m.end() ? 0.0 : mt->second;
      CHECK(std::abs(g.m_consistent[e] - m_ref) < 1e-13);
    }

  for (int i = 0; i < g.n; ++i) {
    CHECK(std::abs(g.m_lumped[i] - oracle.lumped[i]) < 1e-13);
    for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) {
      const auto it = oracle.b.find({i, g.b_terms[t].component});
      REQUIRE(it != oracle.b.end());
      for (int a = 0; a < dim; ++a) CHECK(std::abs(g.b_terms[t].c[a] - it->second[a]) < 1e-13);
    }
  }
  size_t n_bterms = 0;
  for (int i = 0; i < g.n; ++i) n_bterms += g.b_row_ptr[i + 1] - g.b_row_ptr[i];
  CHECK(n_bterms == oracle.b.size());
}

template <int dim>
void check_identities(const DgSpace<dim>& sp, const StencilGraph<dim>& g) {
  REQUIRE(g.n == sp.n_dofs());

  double mass = 0.0;
  for (int i = 0; i < g.n; ++i) {
    CHECK(g.m_lumped[i] > 0.0);
    mass += g.m_lumped[i];

    double scale = 0.0;
    std::array<double, dim> row_sum{};
    double gram_row = 0.0;
    for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
      const int j = g.col_idx[e];
      if (e > g.row_ptr[i]) CHECK(j > g.col_idx[e - 1]); // sorted columns

      const int et = g.transpose[e];
      CHECK(g.col_idx[et] == i);
      CHECK(g.transpose[et] == e);
      CHECK(g.m_consistent[et] == g.m_consistent[e]); // bitwise symmetric
      for (int a = 0; a < dim; ++a) {
        CHECK(g.c[et][a] == -g.c[e][a]); // bitwise antisymmetric
        if (j == i) CHECK(g.c[e][a] == 0.0);
        row_sum[a] += g.c[e][a];
        scale = std::max(scale, std::abs(g.c[e][a]));
      }
      gram_row += g.m_consistent[e];
    }
    for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) {
      const auto& bt = g.b_terms[t];
      for (int a = 0; a < dim; ++a) row_sum[a] += bt.c[a];
      CHECK(bt.norm == doctest::Approx(gdg::norm2<dim>(bt.c)).epsilon(1e-13));
      CHECK(std::abs(gdg::norm2<dim>(bt.normal) - 1.0) < 1e-13);
    }
    for (int a = 0; a < dim; ++a) CHECK(std::abs(row_sum[a]) <= 1e-13 * (1.0 + scale));

    // The cell-block Gram rows sum to the lumped mass.
    CHECK(gram_row == doctest::Approx(g.m_lumped[i]).epsilon(1e-13));
  }
  CHECK(mass == doctest::Approx(sp.volume()).epsilon(1e-12));
  CHECK(g.volume == doctest::Approx(mass).epsilon(1e-14));

  for (size_t bi = 1; bi < g.b_dofs.size(); ++bi) CHECK(g.b_dofs[bi - 1] < g.b_dofs[bi]);
  for (int i : g.b_dofs) CHECK(g.b_row_ptr[i + 1] > g.b_row_ptr[i]);
}

Mesh<1> jittered_interval(int n) {
  auto m = gdg::interval_mesh(0.0, 1.0, n);
  for (size_t v = 1; v + 1 < m.vertices.size(); ++v)
    m.vertices[v][0] += 0.15 / n * std::sin(7.0 * v);
  return m;
}

Mesh<2> jittered_box(int nx, int ny) {
  auto m = gdg::box_mesh({0.0, 0.0}, {2.0, 1.0}, nx, ny);
  const double hx = 2.0 / nx, hy = 1.0 / ny;
  for (auto& v : m.vertices) {
    if (v[0] <= 0.0 || v[0] >= 2.0 || v[1] <= 0.0 || v[1] >= 1.0) continue;
    v[0] += 0.13 * hx * std::sin(5.0 * v[0] + 9.0 * v[1]);
    v[1] += 0.11 * hy * std::cos(3.0 * v[0] - 4.0 * v[1]);
  }
  return m;
}

} // namespace

TEST_CASE("two-cell interval graph has the textbook entries") {
  WorkerPool pool(1);
  const DgSpace<1> sp(gdg::interval_mesh(0.0, 1.0, 2), 1);
  const auto g = gdg::assemble(sp, pool);
  const double h = 0.5;

  REQUIRE(g.n == 4);
  CHECK(g.c[g.find(0, 1)][0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g.c[g.find(1, 2)][0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g.c[g.find(2, 1)][0] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(g.c[g.find(0, 0)][0] == 0.0);
  CHECK(g.find(0, 3) == -1); // no coupling across a whole cell

  CHECK(g.m_lumped[0] == doctest::Approx(h / 2).epsilon(1e-14));
  CHECK(g.m_lumped[1] == doctest::Approx(h / 2).epsilon(1e-14));
  CHECK(g.m_consistent[g.find(0, 0)] == doctest::Approx(h / 3).epsilon(1e-14));
  CHECK(g.m_consistent[g.find(0, 1)] == doctest::Approx(h / 6).epsilon(1e-14));

  REQUIRE(g.b_row_ptr[1] - g.b_row_ptr[0] == 1);
  const auto& left = g.b_terms[g.b_row_ptr[0]];
  CHECK(left.component == 0);
  CHECK(left.c[0] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(left.normal[0] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("structural identities hold across meshes and degrees") {
  WorkerPool pool(2);
  for (int k : {1, 2, 3}) {
    const DgSpace<1> sp(jittered_interval(9), k);
    check_identities(sp, gdg::assemble(sp, pool));
  }
  for (int k : {1, 2, 3}) {
    const DgSpace<2> sp(jittered_box(4, 3), k);
    check_identities(sp, gdg::assemble(sp, pool));
  }
  {
    const DgSpace<2> sp(gdg::refine(gdg::cylinder_channel_mesh()), 1);
    check_identities(sp, gdg::assemble(sp, pool));
  }
}

TEST_CASE("assembly matches a double-order quadrature reassembly") {
  WorkerPool pool(2);
  for (int k : {1, 2, 3}) {
    const DgSpace<1> sp(jittered_interval(5), k);
    check_against_oracle(sp, gdg::assemble(sp, pool));
  }
  for (int k : {1, 2}) {
    const DgSpace<2> sp(jittered_box(3, 2), k);
    check_against_oracle(sp, gdg::assemble(sp, pool));
  }
  {
    const DgSpace<2> sp(gdg::cylinder_channel_mesh(), 1);
    check_against_oracle(sp, gdg::assemble(sp, pool));
  }
}

TEST_CASE("assembly is deterministic across thread counts") {
  const DgSpace<2> sp(jittered_box(5, 4), 2);
  WorkerPool p1(1), p4(4);
  const auto g1 = gdg::assemble(sp, p1);
  const auto g4 = gdg::assemble(sp, p4);

  REQUIRE(g1.n_edges() == g4.n_edges());
  CHECK(g1.col_idx == g4.col_idx);
  for (int e = 0; e < g1.n_edges(); ++e) {
    CHECK(g1.m_consistent[e] == g4.m_consistent[e]);
    for (int a = 0; a < 2; ++a) CHECK(g1.c[e][a] == g4.c[e][a]);
  }
  CHECK(g1.m_lumped == g4.m_lumped);
}
