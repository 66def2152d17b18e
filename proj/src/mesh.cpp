// SPDX-License-Identifier: MIT
#include "gdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "gdg/check.hpp"

namespace gdg {

namespace {

using Edge = std::pair<int, int>;

Edge edge_key(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Global vertex ids of a 2D local face, in face-parameter order.
std::array<int, 2> face_ids(const Mesh<2>& mesh, int cell, int local_face) {
  const auto lv = Mesh<2>::face_vertices(local_face);
  return {mesh.cells[cell][lv[0]], mesh.cells[cell][lv[1]]};
}

double quad_area(const Mesh<2>& mesh, int cell) {
  const auto& c = mesh.cells[cell];
  // Counter-clockwise polygon order from tensor order.
  const int order[4] = {c[0], c[1], c[3], c[2]};
  double a = 0.0;
  for (int k = 0; k < 4; ++k) {
    const auto& p = mesh.vertices[order[k]];
    const auto& q = mesh.vertices[order[(k + 1) % 4]];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

} // namespace

template <>
void validate_mesh(const Mesh<1>& mesh);
template <>
void validate_mesh(const Mesh<2>& mesh);

template <>
std::vector<InteriorFace> interior_faces(const Mesh<1>& mesh) {
  // Collect cell endpoints by vertex.
  std::map<int, std::vector<std::pair<int, int>>> at_vertex; // vertex -> (cell, local_face)
  for (int c = 0; c < mesh.n_cells(); ++c) {
    at_vertex[mesh.cells[c][0]].push_back({c, 0});
    at_vertex[mesh.cells[c][1]].push_back({c, 1});
  }
  std::vector<InteriorFace> faces;
  for (const auto& [v, inc] : at_vertex) {
    if (inc.size() != 2) continue;
    InteriorFace f{};
    f.cell[0] = inc[0].first;
    f.local_face[0] = inc[0].second;
    f.cell[1] = inc[1].first;
    f.local_face[1] = inc[1].second;
    f.flipped = false;
    faces.push_back(f);
  }
  return faces;
}

template <>
std::vector<InteriorFace> interior_faces(const Mesh<2>& mesh) {
  std::map<Edge, std::vector<std::pair<int, int>>> at_edge;
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int f = 0; f < 4; ++f) {
      const auto ids = face_ids(mesh, c, f);
      at_edge[edge_key(ids[0], ids[1])].push_back({c, f});
    }
  std::vector<InteriorFace> faces;
  for (const auto& [e, inc] : at_edge) {
    if (inc.size() != 2) continue;
    InteriorFace f{};
    f.cell[0] = inc[0].first;
    f.local_face[0] = inc[0].second;
    f.cell[1] = inc[1].first;
    f.local_face[1] = inc[1].second;
    f.flipped = face_ids(mesh, f.cell[0], f.local_face[0])[0] !=
                face_ids(mesh, f.cell[1], f.local_face[1])[0];
    faces.push_back(f);
  }
  return faces;
}

Mesh<1> interval_mesh(double a, double b, int n_cells, int left_component, int right_component) {
  GDG_REQUIRE(n_cells >= 1 && b > a, "interval_mesh: bad arguments");
  Mesh<1> mesh;
  mesh.vertices.resize(n_cells + 1);
  for (int i = 0; i <= n_cells; ++i)
    mesh.vertices[i] = {a + (b - a) * i / n_cells};
  for (int c = 0; c < n_cells; ++c)
    mesh.cells.push_back({c, c + 1});
  mesh.boundary.push_back({0, 0, left_component});
  mesh.boundary.push_back({n_cells - 1, 1, right_component});
  return mesh;
}

Mesh<2> box_mesh(std::array<double, 2> lo, std::array<double, 2> hi, int nx, int ny) {
  GDG_REQUIRE(nx >= 1 && ny >= 1 && hi[0] > lo[0] && hi[1] > lo[1], "box_mesh: bad arguments");
  Mesh<2> mesh;
  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.vertices.push_back({lo[0] + (hi[0] - lo[0]) * i / nx, lo[1] + (hi[1] - lo[1]) * j / ny});
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int c = mesh.n_cells();
      mesh.cells.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)});
      if (i == 0) mesh.boundary.push_back({c, 0, 0});
      if (i == nx - 1) mesh.boundary.push_back({c, 1, 1});
      if (j == 0) mesh.boundary.push_back({c, 2, 2});
      if (j == ny - 1) mesh.boundary.push_back({c, 3, 3});
    }
  return mesh;
}

Mesh<2> cylinder_channel_mesh() {
  const double cx = 0.6, cy = 0.0, r = 0.25;
  const std::vector<double> xs = {0.0, 0.2, 0.6, 1.0, 2.0, 3.0, 4.0};
  const std::vector<double> ys = {-1.0, -0.4, 0.0, 0.4, 1.0};
  const int nx = static_cast<int>(xs.size()) - 1;
  const int ny = static_cast<int>(ys.size()) - 1;

  Mesh<2> mesh;
  auto vid = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      mesh.vertices.push_back({xs[i], ys[j]});

  // Grid cells with the 2x2 block around the disk left out.
  auto in_hole = [](int i, int j) { return (i == 1 || i == 2) && (j == 1 || j == 2); };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (in_hole(i, j)) continue;
      const int c = mesh.n_cells();
      mesh.cells.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)});
      if (i == 0) mesh.boundary.push_back({c, 0, 0});
      if (i == nx - 1) mesh.boundary.push_back({c, 1, 1});
      if (j == 0) mesh.boundary.push_back({c, 2, 2});
      if (j == ny - 1) mesh.boundary.push_back({c, 3, 3});
    }

  // Ring between the hole perimeter (octagon corners at 45 degree steps) and
  // the disk. xi runs along the angle, eta points inward; the eta=1 face is
  // the chord approximation of the circle and carries the arc tag.
  const int outer[8] = {vid(3, 2), vid(3, 3), vid(2, 3), vid(1, 3),
                        vid(1, 2), vid(1, 1), vid(2, 1), vid(3, 1)};
  mesh.arcs.push_back({{cx, cy}, r});
  int inner[8];
  const double pi = 3.14159265358979323846;
  for (int s = 0; s < 8; ++s) {
    const double th = 2.0 * pi * s / 8.0;
    inner[s] = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back({cx + r * std::cos(th), cy + r * std::sin(th)});
  }
  for (int s = 0; s < 8; ++s) {
    const int t = (s + 1) % 8;
    const int c = mesh.n_cells();
    mesh.cells.push_back({outer[s], outer[t], inner[s], inner[t]});
    mesh.boundary.push_back({c, 3, 4});
    mesh.curved_faces.push_back({c, 3, 0});
  }

  validate_mesh(mesh);
  return mesh;
}

template <>
Mesh<1> refine(const Mesh<1>& mesh) {
  Mesh<1> out;
  out.vertices = mesh.vertices;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const int v0 = mesh.cells[c][0], v1 = mesh.cells[c][1];
    const int vm = static_cast<int>(out.vertices.size());
    out.vertices.push_back({0.5 * (mesh.vertices[v0][0] + mesh.vertices[v1][0])});
    out.cells.push_back({v0, vm});
    out.cells.push_back({vm, v1});
  }
  for (const auto& b : mesh.boundary)
    out.boundary.push_back({2 * b.cell + b.local_face, b.local_face, b.component});
  return out;
}

template <>
Mesh<2> refine(const Mesh<2>& mesh) {
  Mesh<2> out;
  out.vertices = mesh.vertices;
  out.arcs = mesh.arcs;

  std::map<Edge, int> arc_of_edge;
  for (const auto& [cell, face, arc] : mesh.curved_faces) {
    const auto ids = face_ids(mesh, cell, face);
    arc_of_edge[edge_key(ids[0], ids[1])] = arc;
  }

  std::map<Edge, int> midpoint;
  auto edge_mid = [&](int a, int b) {
    const Edge key = edge_key(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    std::array<double, 2> m = {0.5 * (mesh.vertices[a][0] + mesh.vertices[b][0]),
                               0.5 * (mesh.vertices[a][1] + mesh.vertices[b][1])};
    if (auto ae = arc_of_edge.find(key); ae != arc_of_edge.end()) {
      const auto& arc = mesh.arcs[ae->second];
      const double dx = m[0] - arc.center[0], dy = m[1] - arc.center[1];
      const double scale = arc.radius / std::hypot(dx, dy);
      m = {arc.center[0] + scale * dx, arc.center[1] + scale * dy};
    }
    const int id = static_cast<int>(out.vertices.size());
    out.vertices.push_back(m);
    midpoint.emplace(key, id);
    return id;
  };

  // Children in tensor order: child (a, b) occupies the (a, b) quadrant and
  // gets index 4*cell + 2*b + a.
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& v = mesh.cells[c];
    const int m_bottom = edge_mid(v[0], v[1]);
    const int m_top = edge_mid(v[2], v[3]);
    const int m_left = edge_mid(v[0], v[2]);
    const int m_right = edge_mid(v[1], v[3]);
    const int center = static_cast<int>(out.vertices.size());
    out.vertices.push_back({0.25 * (out.vertices[m_bottom][0] + out.vertices[m_top][0] +
                                    out.vertices[m_left][0] + out.vertices[m_right][0]),
                            0.25 * (out.vertices[m_bottom][1] + out.vertices[m_top][1] +
                                    out.vertices[m_left][1] + out.vertices[m_right][1])});
    out.cells.push_back({v[0], m_bottom, m_left, center});
    out.cells.push_back({m_bottom, v[1], center, m_right});
    out.cells.push_back({m_left, center, v[2], m_top});
    out.cells.push_back({center, m_right, m_top, v[3]});
  }

  // A parent face splits into the two child faces with the same local index.
  // Children adjacent to local face f, in face-parameter order:
  static const int face_children[4][2] = {{0, 2}, {1, 3}, {0, 1}, {2, 3}};
  for (const auto& b : mesh.boundary)
    for (int h = 0; h < 2; ++h)
      out.boundary.push_back(
          {4 * b.cell + face_children[b.local_face][h], b.local_face, b.component});
  for (const auto& [cell, face, arc] : mesh.curved_faces)
    for (int h = 0; h < 2; ++h)
      out.curved_faces.push_back({4 * cell + face_children[face][h], face, arc});

  return out;
}

template <>
void validate_mesh(const Mesh<1>& mesh) {
  for (const auto& c : mesh.cells)
    GDG_REQUIRE(mesh.vertices[c[1]][0] > mesh.vertices[c[0]][0], "mesh: inverted 1D cell");
  std::map<int, int> incidence;
  for (const auto& c : mesh.cells) {
    incidence[c[0]]++;
    incidence[c[1]]++;
  }
  int open = 0;
  for (const auto& [v, n] : incidence) {
    GDG_REQUIRE(n <= 2, "mesh: vertex " << v << " shared by " << n << " cells");
    open += (n == 1);
  }
  GDG_REQUIRE(open == static_cast<int>(mesh.boundary.size()),
              "mesh: boundary list does not cover the open endpoints");
  for (const auto& b : mesh.boundary)
    GDG_REQUIRE(b.component >= 0 && b.cell >= 0 && b.cell < mesh.n_cells(), "mesh: bad boundary face");
}

template <>
void validate_mesh(const Mesh<2>& mesh) {
  std::map<Edge, int> incidence;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    GDG_REQUIRE(quad_area(mesh, c) > 0.0, "mesh: cell " << c << " inverted or degenerate");
    for (int f = 0; f < 4; ++f) {
      const auto ids = face_ids(mesh, c, f);
      incidence[edge_key(ids[0], ids[1])]++;
    }
  }
  std::map<Edge, int> tagged;
  for (const auto& b : mesh.boundary) {
    GDG_REQUIRE(b.component >= 0 && b.cell >= 0 && b.cell < mesh.n_cells() && b.local_face >= 0 &&
                    b.local_face < 4,
                "mesh: bad boundary face record");
    const auto ids = face_ids(mesh, b.cell, b.local_face);
    tagged[edge_key(ids[0], ids[1])]++;
  }
  for (const auto& [e, n] : incidence) {
    GDG_REQUIRE(n <= 2, "mesh: face shared by " << n << " cells (non-conforming)");
    const int t = tagged.count(e) ? tagged.at(e) : 0;
    if (n == 1)
      GDG_REQUIRE(t == 1, "mesh: boundary face missing from or duplicated in the boundary list");
    else
      GDG_REQUIRE(t == 0, "mesh: interior face tagged as boundary");
  }
  for (const auto& [cell, face, arc] : mesh.curved_faces) {
    GDG_REQUIRE(arc >= 0 && arc < static_cast<int>(mesh.arcs.size()), "mesh: bad arc id");
    const auto ids = face_ids(mesh, cell, face);
    for (int v : ids) {
      const double d = std::hypot(mesh.vertices[v][0] - mesh.arcs[arc].center[0],
                                  mesh.vertices[v][1] - mesh.arcs[arc].center[1]);
      GDG_REQUIRE(std::abs(d - mesh.arcs[arc].radius) < 1e-12 * (1.0 + mesh.arcs[arc].radius),
                  "mesh: curved-face vertex off its arc by " << d - mesh.arcs[arc].radius);
    }
  }
}

template <>
double mesh_volume(const Mesh<1>& mesh) {
  double v = 0.0;
  for (const auto& c : mesh.cells)
    v += mesh.vertices[c[1]][0] - mesh.vertices[c[0]][0];
  return v;
}

template <>
double mesh_volume(const Mesh<2>& mesh) {
  double v = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) v += quad_area(mesh, c);
  return v;
}

} // namespace gdg
