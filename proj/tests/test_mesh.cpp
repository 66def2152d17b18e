// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>
#include <set>

#include "gdg/mesh.hpp"

using gdg::Mesh;

TEST_CASE("interval mesh layout") {
  const auto m = gdg::interval_mesh(0.0, 1.0, 4);
  gdg::validate_mesh(m);
  CHECK(m.n_cells() == 4);
  CHECK(m.vertices.size() == 5);
  CHECK(gdg::mesh_volume(m) == doctest::Approx(1.0).epsilon(1e-15));
  REQUIRE(m.boundary.size() == 2);
  CHECK(m.n_components() == 2);

  const auto faces = gdg::interior_faces(m);
  CHECK(faces.size() == 3);
  for (const auto& f : faces) CHECK_FALSE(f.flipped);
}

TEST_CASE("box mesh layout and counts") {
  const auto m = gdg::box_mesh({-5.0, -5.0}, {5.0, 5.0}, 6, 4);
  gdg::validate_mesh(m);
  CHECK(m.n_cells() == 24);
  CHECK(gdg::mesh_volume(m) == doctest::Approx(100.0).epsilon(1e-13));
  CHECK(m.n_components() == 4);
  CHECK(m.boundary.size() == 2 * 6 + 2 * 4);
  CHECK(gdg::interior_faces(m).size() == 6 * 3 + 5 * 4);

  // Component tags follow left/right/bottom/top.
  for (const auto& b : m.boundary) {
    const auto verts = Mesh<2>::face_vertices(b.local_face);
    for (int lv : verts) {
      const auto& p = m.vertices[m.cells[b.cell][lv]];
      if (b.component == 0) CHECK(p[0] == doctest::Approx(-5.0));
      if (b.component == 1) CHECK(p[0] == doctest::Approx(5.0));
      if (b.component == 2) CHECK(p[1] == doctest::Approx(-5.0));
      if (b.component == 3) CHECK(p[1] == doctest::Approx(5.0));
    }
  }
}

TEST_CASE("refinement preserves volume and boundary structure") {
  auto m1 = gdg::interval_mesh(0.0, 2.0, 3);
  const auto r1 = gdg::refine(m1);
  gdg::validate_mesh(r1);
  CHECK(r1.n_cells() == 6);
  CHECK(gdg::mesh_volume(r1) == doctest::Approx(2.0).epsilon(1e-14));

  const auto m2 = gdg::box_mesh({0.0, 0.0}, {1.0, 1.0}, 2, 2);
  const auto r2 = gdg::refine(m2);
  gdg::validate_mesh(r2);
  CHECK(r2.n_cells() == 16);
  CHECK(gdg::mesh_volume(r2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r2.n_components() == 4);
  CHECK(r2.boundary.size() == 2 * m2.boundary.size());
}

TEST_CASE("cylinder channel mesh") {
  const auto m = gdg::cylinder_channel_mesh();
  gdg::validate_mesh(m);
  CHECK(m.n_cells() == 28);
  CHECK(m.n_components() == 5);
  CHECK_FALSE(m.arcs.empty());
  CHECK_FALSE(m.curved_faces.empty());

  std::set<int> comps;
  for (const auto& b : m.boundary) comps.insert(b.component);
  CHECK(comps == std::set<int>{0, 1, 2, 3, 4});

  // All curved faces sit on the cylinder component.
  std::set<std::pair<int, int>> curved;
  for (const auto& cf : m.curved_faces) curved.insert({cf[0], cf[1]});
  for (const auto& b : m.boundary)
    if (b.component == 4) CHECK(curved.count({b.cell, b.local_face}) == 1);

  // The polygonal hole underestimates the disk, so the coarse volume exceeds
  // the exact one; refinement has to shrink it monotonically toward it.
  const double exact = 4.0 * 2.0 - M_PI * 0.25 * 0.25;
  const double v0 = gdg::mesh_volume(m);
  const auto r = gdg::refine(m);
  gdg::validate_mesh(r);
  const double v1 = gdg::mesh_volume(r);
  const auto r2 = gdg::refine(r);
  gdg::validate_mesh(r2);
  const double v2 = gdg::mesh_volume(r2);
  CHECK(v0 > exact);
  CHECK(v1 > exact);
  CHECK(v2 > exact);
  CHECK(v1 < v0);
  CHECK(v2 < v1);
  CHECK(std::abs(v2 - exact) < 0.25 * std::abs(v0 - exact));

  // Projected vertices stay on the arc after two refinements.
  for (const auto& cf : r2.curved_faces) {
    const auto& arc = r2.arcs[cf[2]];
    for (int lv : Mesh<2>::face_vertices(cf[1])) {
      const auto& p = r2.vertices[r2.cells[cf[0]][lv]];
      const double rad = std::hypot(p[0] - arc.center[0], p[1] - arc.center[1]);
      CHECK(rad == doctest::Approx(arc.radius).epsilon(1e-12));
    }
  }
}

TEST_CASE("validation rejects broken meshes") {
  auto m = gdg::interval_mesh(0.0, 1.0, 2);
  std::swap(m.cells[0][0], m.cells[0][1]); // inverted cell
  CHECK_THROWS(gdg::validate_mesh(m));

  auto m2 = gdg::box_mesh({0.0, 0.0}, {1.0, 1.0}, 2, 1);
  m2.boundary.pop_back(); // untagged boundary face
  CHECK_THROWS(gdg::validate_mesh(m2));
}
