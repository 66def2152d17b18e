// SPDX-License-Identifier: MIT
// Conforming quadrilateral/interval meshes. Cells store vertex ids in tensor
// order; all cell maps are (bi)linear. Curved domain boundaries are tracked
// as arc tags so uniform refinement can project new boundary vertices, the
// cells themselves always use straight (chord) edges.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace gdg {

// dim = 1: cells are [v0, v1] intervals, local faces 0 = left, 1 = right.
// dim = 2: vertex order (0,0),(1,0),(0,1),(1,1); local faces 0: xi=0,
// 1: xi=1, 2: eta=0, 3: eta=1, each parametrized by the increasing
// remaining coordinate.
template <int dim>
struct Mesh {
  static constexpr int vertices_per_cell = 1 << dim;
  static constexpr int faces_per_cell = 2 * dim;

  struct BoundaryFace {
    int cell;
    int local_face;
    int component;
  };

  struct Arc {
    std::array<double, 2> center;
    double radius;
  };

  std::vector<std::array<double, dim>> vertices;
  std::vector<std::array<int, vertices_per_cell>> cells;
  std::vector<BoundaryFace> boundary;
  std::vector<Arc> arcs;
  // (cell, local_face, arc id); refinement projects the new mid-vertex of
  // such a face onto the arc.
  std::vector<std::array<int, 3>> curved_faces;

  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_components() const {
    int c = -1;
    for (const auto& b : boundary) c = b.component > c ? b.component : c;
    return c + 1;
  }

  // Vertex ids of a local face, in face-parameter order.
  static std::array<int, (dim > 1 ? 2 : 1)> face_vertices(int local_face);
};

template <>
inline std::array<int, 1> Mesh<1>::face_vertices(int local_face) {
  return {local_face == 0 ? 0 : 1};
}

template <>
inline std::array<int, 2> Mesh<2>::face_vertices(int local_face) {
  switch (local_face) {
    case 0: return {0, 2};
    case 1: return {1, 3};
    case 2: return {0, 1};
    default: return {2, 3};
  }
}

// Interior face between two cells; `flipped` marks opposite traversal of the
// shared face parameter on side 1.
struct InteriorFace {
  int cell[2];
  int local_face[2];
  bool flipped;
};

template <int dim>
std::vector<InteriorFace> interior_faces(const Mesh<dim>& mesh);

Mesh<1> interval_mesh(double a, double b, int n_cells, int left_component = 0,
                      int right_component = 1);

// Axis-aligned box, components 0/1/2/3 = left/right/bottom/top.
Mesh<2> box_mesh(std::array<double, 2> lo, std::array<double, 2> hi, int nx, int ny);

// Channel [0,4]x[-1,1] around a radius-0.25 disk centered at (0.6, 0).
// Components: 0 = inlet x=0, 1 = outlet x=4, 2 = bottom wall, 3 = top wall,
// 4 = cylinder. 28 coarse cells, 8 of them forming the ring around the disk.
Mesh<2> cylinder_channel_mesh();

template <int dim>
Mesh<dim> refine(const Mesh<dim>& mesh);

// Throws on dangling vertices, non-conforming faces, inverted cells, or
// untagged boundary faces. Meant for tests and builders.
template <int dim>
void validate_mesh(const Mesh<dim>& mesh);

template <int dim>
double mesh_volume(const Mesh<dim>& mesh);

} // namespace gdg
