// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>

#include "gdg/space.hpp"

using gdg::DgSpace;

TEST_CASE("dof layout on a two-cell interval") {
  const DgSpace<1> space(gdg::interval_mesh(0.0, 1.0, 2), 1);
  CHECK(space.n_dofs() == 4);
  CHECK(space.nodes_per_cell() == 2);
  CHECK(space.dof(1, 0) == 2);
  CHECK(space.cell_of(3) == 1);
  CHECK(space.local_of(3) == 1);

  // Nodes are duplicated at the interior interface.
  CHECK(space.node(0)[0] == doctest::Approx(0.0));
  CHECK(space.node(1)[0] == doctest::Approx(0.5));
  CHECK(space.node(2)[0] == doctest::Approx(0.5));
  CHECK(space.node(3)[0] == doctest::Approx(1.0));
  CHECK(space.volume() == doctest::Approx(1.0));
}

TEST_CASE("local tuples invert local indices") {
  const DgSpace<2> space(gdg::box_mesh({0, 0}, {1, 1}, 2, 2), 3);
  for (int l = 0; l < space.nodes_per_cell(); ++l)
    CHECK(space.local_index(space.local_tuple(l)) == l);
}

TEST_CASE("face locals match face reference points") {
  const DgSpace<2> space(gdg::box_mesh({0, 0}, {2, 1}, 2, 1), 2);
  const auto& n1 = space.nodes_1d();
  for (int lf = 0; lf < 4; ++lf) {
    const auto locals = space.face_locals(lf);
    REQUIRE(locals.size() == n1.size());
    for (size_t r = 0; r < locals.size(); ++r) {
      const auto t = space.local_tuple(locals[r]);
      const auto ref = space.face_ref_point(lf, n1[r]);
      CHECK(n1[t[0]] == doctest::Approx(ref[0]).epsilon(1e-15));
      CHECK(n1[t[1]] == doctest::Approx(ref[1]).epsilon(1e-15));
    }
  }
}

TEST_CASE("weighted normals close around each cell") {
  auto mesh = gdg::box_mesh({0, 0}, {3, 2}, 3, 2);
  // Perturb an interior vertex so cells are genuinely bilinear.
  for (auto& v : mesh.vertices)
    if (std::abs(v[0] - 1.0) < 1e-12 && std::abs(v[1] - 1.0) < 1e-12) {
      v[0] += 0.17;
      v[1] -= 0.11;
    }
  const DgSpace<2> space(mesh, 2);

  for (int c = 0; c < mesh.n_cells(); ++c) {
    double sx = 0.0, sy = 0.0;
    for (int lf = 0; lf < 4; ++lf) {
      const auto w = space.face_weighted_normal(c, lf);
      sx += w[0];
      sy += w[1];
    }
    CHECK(sx == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sy == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("weighted normals point outward with face length") {
  const DgSpace<2> space(gdg::box_mesh({0, 0}, {2, 6}, 1, 2), 1);
  // Cell 0 is [0,2]x[0,3].
  const auto left = space.face_weighted_normal(0, 0);
  CHECK(left[0] == doctest::Approx(-3.0));
  CHECK(left[1] == doctest::Approx(0.0));
  const auto right = space.face_weighted_normal(0, 1);
  CHECK(right[0] == doctest::Approx(3.0));
  const auto bottom = space.face_weighted_normal(0, 2);
  CHECK(bottom[1] == doctest::Approx(-2.0));
  const auto top = space.face_weighted_normal(0, 3);
  CHECK(top[1] == doctest::Approx(2.0));
}

TEST_CASE("cell maps hit the vertices and scale volumes") {
  const DgSpace<2> space(gdg::box_mesh({1, 2}, {3, 5}, 2, 3), 1);
  const auto& mesh = space.mesh();
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& map = space.cell_map(c);
    const auto p00 = map.point({0.0, 0.0});
    const auto p11 = map.point({1.0, 1.0});
    const auto& v00 = mesh.vertices[mesh.cells[c][0]];
    const auto& v11 = mesh.vertices[mesh.cells[c][3]];
    CHECK(p00[0] == doctest::Approx(v00[0]).epsilon(1e-15));
    CHECK(p00[1] == doctest::Approx(v00[1]).epsilon(1e-15));
    CHECK(p11[0] == doctest::Approx(v11[0]).epsilon(1e-15));
    CHECK(p11[1] == doctest::Approx(v11[1]).epsilon(1e-15));
    CHECK(map.det({0.5, 0.5}) == doctest::Approx(1.0 * 1.0).epsilon(1e-14));
  }
}
