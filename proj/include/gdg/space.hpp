// SPDX-License-Identifier: MIT
// Discontinuous collocation space on a mesh: Gauss-Lobatto Lagrange nodes of
// a fixed degree per cell, no continuity across faces. Dof ids are
// cell * nodes_per_cell + local, locals in tensor order (x fastest).
#pragma once

#include <array>
#include <type_traits>
#include <vector>

#include "gdg/check.hpp"
#include "gdg/lobatto.hpp"
#include "gdg/mesh.hpp"

namespace gdg {

template <int dim>
struct CellMap;

template <>
struct CellMap<1> {
  double x0, h;

  std::array<double, 1> point(const std::array<double, 1>& xi) const { return {x0 + h * xi[0]}; }
  double det(const std::array<double, 1>&) const { return h; }
  // det * J^{-T} g, the gradient transform without the Jacobian division.
  std::array<double, 1> cof_apply(const std::array<double, 1>&, const std::array<double, 1>& g) const {
    return {g[0]};
  }
};

template <>
struct CellMap<2> {
  // x(xi, eta) = a + b xi + c eta + d xi eta.
  std::array<double, 2> a, b, c, d;

  std::array<double, 2> point(const std::array<double, 2>& xi) const {
    return {a[0] + b[0] * xi[0] + c[0] * xi[1] + d[0] * xi[0] * xi[1],
            a[1] + b[1] * xi[0] + c[1] * xi[1] + d[1] * xi[0] * xi[1]};
  }
  // Columns of the Jacobian.
  std::array<double, 2> dxi(const std::array<double, 2>& xi) const {
    return {b[0] + d[0] * xi[1], b[1] + d[1] * xi[1]};
  }
  std::array<double, 2> deta(const std::array<double, 2>& xi) const {
    return {c[0] + d[0] * xi[0], c[1] + d[1] * xi[0]};
  }
  double det(const std::array<double, 2>& xi) const {
    const auto u = dxi(xi), v = deta(xi);
    return u[0] * v[1] - u[1] * v[0];
  }
  std::array<double, 2> cof_apply(const std::array<double, 2>& xi,
                                  const std::array<double, 2>& g) const {
    const auto u = dxi(xi), v = deta(xi);
    return {v[1] * g[0] - u[1] * g[1], -v[0] * g[0] + u[0] * g[1]};
  }
};

template <int dim>
class DgSpace {
 public:
  DgSpace(Mesh<dim> mesh, int degree)
      : mesh_(std::move(mesh)),
        degree_(degree),
        nodes_1d_(lobatto_points(degree)),
        basis_(nodes_1d_) {
    GDG_REQUIRE(degree >= 1, "space: degree must be at least 1");
    nodes_per_cell_ = 1;
    for (int a = 0; a < dim; ++a) nodes_per_cell_ *= degree + 1;
    build_maps();
    build_nodes();
  }

  const Mesh<dim>& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int nodes_per_cell() const { return nodes_per_cell_; }
  int n_dofs() const { return mesh_.n_cells() * nodes_per_cell_; }
  int dof(int cell, int local) const { return cell * nodes_per_cell_ + local; }
  int cell_of(int dof) const { return dof / nodes_per_cell_; }
  int local_of(int dof) const { return dof % nodes_per_cell_; }

  const std::vector<double>& nodes_1d() const { return nodes_1d_; }
  const Lagrange1D& basis() const { return basis_; }
  const CellMap<dim>& cell_map(int cell) const { return maps_[cell]; }
  const std::array<double, dim>& node(int dof) const { return node_coords_[dof]; }

  std::array<int, dim> local_tuple(int local) const {
    std::array<int, dim> t{};
    for (int a = 0; a < dim; ++a) {
      t[a] = local % (degree_ + 1);
      local /= degree_ + 1;
    }
    return t;
  }
  int local_index(const std::array<int, dim>& t) const {
    int l = 0;
    for (int a = dim - 1; a >= 0; --a) l = l * (degree_ + 1) + t[a];
    return l;
  }

  // Locals lying on a face, in face-parameter order.
  std::vector<int> face_locals(int local_face) const {
    const int k = degree_;
    std::vector<int> out;
    if constexpr (dim == 1) {
      out.push_back(local_face == 0 ? 0 : k);
    } else {
      out.reserve(k + 1);
      for (int i = 0; i <= k; ++i) {
        switch (local_face) {
          case 0: out.push_back(i * (k + 1)); break;
          case 1: out.push_back(i * (k + 1) + k); break;
          case 2: out.push_back(i); break;
          default: out.push_back(k * (k + 1) + i); break;
        }
      }
    }
    return out;
  }

  std::array<double, dim> face_ref_point(int local_face, double t) const {
    if constexpr (dim == 1) {
      (void)t;
      return {local_face == 0 ? 0.0 : 1.0};
    } else {
      switch (local_face) {
        case 0: return {0.0, t};
        case 1: return {1.0, t};
        case 2: return {t, 0.0};
        default: return {t, 1.0};
      }
    }
  }

  // Constant outward normal scaled by the face length (faces are chords), so
  // the surface integral of f is integral over t in [0,1] of f |w| with
  // n = w / |w|.
  std::array<double, dim> face_weighted_normal(int cell, int local_face) const {
    if constexpr (dim == 1) {
      (void)cell;
      return {local_face == 0 ? -1.0 : 1.0};
    } else {
      const auto lv = Mesh<2>::face_vertices(local_face);
      const auto& p0 = mesh_.vertices[mesh_.cells[cell][lv[0]]];
      const auto& p1 = mesh_.vertices[mesh_.cells[cell][lv[1]]];
      const double tx = p1[0] - p0[0], ty = p1[1] - p0[1];
      const double s = (local_face == 1 || local_face == 2) ? 1.0 : -1.0;
      return {s * ty, -s * tx};
    }
  }

  double volume() const { return volume_; }

 private:
  void build_maps() {
    maps_.resize(mesh_.n_cells());
    for (int c = 0; c < mesh_.n_cells(); ++c) {
      const auto& v = mesh_.cells[c];
      if constexpr (dim == 1) {
        maps_[c].x0 = mesh_.vertices[v[0]][0];
        maps_[c].h = mesh_.vertices[v[1]][0] - mesh_.vertices[v[0]][0];
        GDG_REQUIRE(maps_[c].h > 0.0, "space: inverted cell " << c);
      } else {
        const auto &p00 = mesh_.vertices[v[0]], &p10 = mesh_.vertices[v[1]],
                   &p01 = mesh_.vertices[v[2]], &p11 = mesh_.vertices[v[3]];
        for (int a = 0; a < 2; ++a) {
          maps_[c].a[a] = p00[a];
          maps_[c].b[a] = p10[a] - p00[a];
          maps_[c].c[a] = p01[a] - p00[a];
          maps_[c].d[a] = p11[a] - p10[a] - p01[a] + p00[a];
        }
        // det J is affine in each reference coordinate, so corner
        // positivity covers the whole cell.
        for (double x : {0.0, 1.0})
          for (double y : {0.0, 1.0})
            GDG_REQUIRE(maps_[c].det({x, y}) > 0.0, "space: inverted cell " << c);
      }
    }
    volume_ = mesh_volume(mesh_);
  }

  void build_nodes() {
    node_coords_.resize(n_dofs());
    for (int c = 0; c < mesh_.n_cells(); ++c)
      for (int l = 0; l < nodes_per_cell_; ++l) {
        const auto t = local_tuple(l);
        std::array<double, dim> ref{};
        for (int a = 0; a < dim; ++a) ref[a] = nodes_1d_[t[a]];
        node_coords_[dof(c, l)] = maps_[c].point(ref);
      }
  }

  Mesh<dim> mesh_;
  int degree_;
  int nodes_per_cell_;
  std::vector<double> nodes_1d_;
  Lagrange1D basis_;
  std::vector<CellMap<dim>> maps_;
  std::vector<std::array<double, dim>> node_coords_;
  double volume_ = 0.0;
};

// Tensor-product shape function at a reference point.
template <int dim>
double shape_value(const DgSpace<dim>& space, int local,
                   const std::type_identity_t<std::array<double, dim>>& ref) {
  const auto t = space.local_tuple(local);
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= space.basis().value(t[a], ref[a]);
  return v;
}

// Gradient in reference coordinates (no geometry applied).
template <int dim>
std::array<double, dim> shape_grad(const DgSpace<dim>& space, int local,
                                   const std::type_identity_t<std::array<double, dim>>& ref) {
  const auto t = space.local_tuple(local);
  std::array<double, dim> g{};
  for (int a = 0; a < dim; ++a) {
    double v = space.basis().deriv(t[a], ref[a]);
    for (int b = 0; b < dim; ++b)
      if (b != a) v *= space.basis().value(t[b], ref[b]);
    g[a] = v;
  }
  return g;
}

} // namespace gdg
