// SPDX-License-Identifier: MIT
// Algebraic stencil graph of the collocation space: lumped and cell-block
// consistent masses, the antisymmetric divergence vectors c_ij (volume part
// minus the half-face correction inside a cell, half-face coupling across
// cells), and per-component boundary vectors c_i^b. Everything downstream
// (fluxes, graph viscosities, limiting) works on this graph alone; cells and
// faces never reappear after assembly.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <ostream>
#include <vector>

#include "gdg/check.hpp"
#include "gdg/parallel.hpp"
#include "gdg/space.hpp"

namespace gdg {

template <int dim>
struct StencilGraph {
  int n = 0;

  // CSR over dofs; every row contains its own cell block (diagonal included)
  // plus the face nodes of neighboring cells, columns sorted ascending.
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<std::array<double, dim>> c;
  std::vector<double> m_consistent; // zero on cross-cell edges
  std::vector<int> transpose;       // edge (i,j) -> edge (j,i)
  std::vector<double> m_lumped;

  struct BoundaryTerm {
    int component;
    std::array<double, dim> c;
    double norm;
    std::array<double, dim> normal;
  };
  std::vector<int> b_row_ptr; // CSR over dofs into b_terms
  std::vector<BoundaryTerm> b_terms;
  std::vector<int> b_dofs; // dofs with at least one boundary term, ascending

  double volume = 0.0; // sum of lumped masses

  int n_edges() const { return static_cast<int>(col_idx.size()); }

  int find(int i, int j) const {
    const int* b = col_idx.data() + row_ptr[i];
    const int* e = col_idx.data() + row_ptr[i + 1];
    const int* p = std::lower_bound(b, e, j);
    return (p != e && *p == j) ? static_cast<int>(p - col_idx.data()) : -1;
  }
};

template <int dim>
double norm2(const std::array<double, dim>& v) {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) s += v[a] * v[a];
  return std::sqrt(s);
}

template <int dim>
std::array<double, dim> normal_of(const StencilGraph<dim>& g, int i, int j) {
  const int e = g.find(i, j);
  GDG_REQUIRE(e >= 0, "graph: (" << i << "," << j << ") not in the stencil");
  const double len = norm2<dim>(g.c[e]);
  GDG_REQUIRE(len > 0.0, "graph: zero c vector on edge (" << i << "," << j << ")");
  std::array<double, dim> n;
  for (int a = 0; a < dim; ++a) n[a] = g.c[e][a] / len;
  return n;
}

template <int dim>
std::array<double, dim> boundary_normal_of(const StencilGraph<dim>& g, int i, int component) {
  for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t)
    if (g.b_terms[t].component == component) return g.b_terms[t].normal;
  GDG_REQUIRE(false, "graph: dof " << i << " has no boundary term for component " << component);
  return {};
}

template <int dim>
StencilGraph<dim> assemble(const DgSpace<dim>& space, WorkerPool& pool) {
  const auto& mesh = space.mesh();
  const int k = space.degree();
  const int npc = space.nodes_per_cell();
  const int nfp = dim == 1 ? 1 : k + 1; // nodes per face
  const int n = space.n_dofs();
  const int n_cells = mesh.n_cells();
  const Lagrange1D& basis = space.basis();

  // 1D reference tables at the volume quadrature points.
  const QuadratureRule quad = gauss_rule(k + 1);
  const int nq = quad.size();
  std::vector<double> val(nq * (k + 1)), der(nq * (k + 1));
  for (int q = 0; q < nq; ++q) {
    basis.values(quad.points[q], &val[q * (k + 1)]);
    basis.derivs(quad.points[q], &der[q * (k + 1)]);
  }

  // Face Gram matrix of the 1D trace basis and its row sums. The boundary
  // vectors reuse the row sums so the row-wise partition of unity closes to
  // roundoff.
  std::vector<double> fm(nfp * nfp, 0.0), fint(nfp, 0.0);
  if constexpr (dim == 1) {
    fm[0] = 1.0;
  } else {
    for (int q = 0; q < nq; ++q)
      for (int r = 0; r < nfp; ++r)
        for (int s = 0; s < nfp; ++s)
          fm[r * nfp + s] += quad.weights[q] * val[q * (k + 1) + r] * val[q * (k + 1) + s];
  }
  for (int r = 0; r < nfp; ++r)
    for (int s = 0; s < nfp; ++s) fint[r] += fm[r * nfp + s];

  std::array<std::vector<int>, 2 * dim> flocals;
  std::array<std::vector<char>, 2 * dim> onface;
  for (int f = 0; f < 2 * dim; ++f) {
    flocals[f] = space.face_locals(f);
    onface[f].assign(npc, 0);
    for (int l : flocals[f]) onface[f][l] = 1;
  }

  struct Adj {
    int local_face, nbr_cell, nbr_face;
    bool flipped;
  };
  std::vector<std::vector<Adj>> adj(n_cells);
  const auto ifaces = interior_faces(mesh);
  for (const auto& f : ifaces) {
    adj[f.cell[0]].push_back({f.local_face[0], f.cell[1], f.local_face[1], f.flipped});
    adj[f.cell[1]].push_back({f.local_face[1], f.cell[0], f.local_face[0], f.flipped});
  }

  StencilGraph<dim> g;
  g.n = n;
  g.row_ptr.assign(n + 1, 0);
  for (int cell = 0; cell < n_cells; ++cell)
    for (int l = 0; l < npc; ++l) {
      int count = npc;
      for (const auto& a : adj[cell])
        if (onface[a.local_face][l]) count += nfp;
      g.row_ptr[space.dof(cell, l) + 1] = count;
    }
  for (int i = 0; i < n; ++i) g.row_ptr[i + 1] += g.row_ptr[i];
  const int nnz = g.row_ptr[n];
  g.col_idx.resize(nnz);
  g.c.assign(nnz, {});
  g.m_consistent.assign(nnz, 0.0);
  g.transpose.resize(nnz);
  g.m_lumped.assign(n, 0.0);

  pool.loop(n_cells, [&](std::int64_t cb, std::int64_t ce, int) {
    for (int cell = static_cast<int>(cb); cell < ce; ++cell)
      for (int l = 0; l < npc; ++l) {
        const int i = space.dof(cell, l);
        int* cols = g.col_idx.data() + g.row_ptr[i];
        int count = 0;
        for (int j = 0; j < npc; ++j) cols[count++] = space.dof(cell, j);
        for (const auto& a : adj[cell])
          if (onface[a.local_face][l])
            for (int s = 0; s < nfp; ++s) cols[count++] = space.dof(a.nbr_cell, flocals[a.nbr_face][s]);
        std::sort(cols, cols + count);
      }
  });

  // Same-cell values: volume integrals minus the half-face corrections over
  // the whole cell boundary, and the cell-block Gram.
  pool.loop(n_cells, [&](std::int64_t cb, std::int64_t ce, int) {
    std::vector<std::array<double, dim>> cblk(npc * npc);
    std::vector<double> mblk(npc * npc);
    std::vector<double> phi(npc);
    std::vector<std::array<double, dim>> cof(npc);
    for (int cell = static_cast<int>(cb); cell < ce; ++cell) {
      std::fill(cblk.begin(), cblk.end(), std::array<double, dim>{});
      std::fill(mblk.begin(), mblk.end(), 0.0);
      const auto& map = space.cell_map(cell);

      if constexpr (dim == 1) {
        for (int q = 0; q < nq; ++q) {
          const double w = quad.weights[q];
          for (int i = 0; i < npc; ++i)
            for (int j = 0; j < npc; ++j) {
              cblk[i * npc + j][0] += w * val[q * (k + 1) + i] * der[q * (k + 1) + j];
              mblk[i * npc + j] += w * map.h * val[q * (k + 1) + i] * val[q * (k + 1) + j];
            }
        }
      } else {
        for (int qy = 0; qy < nq; ++qy)
          for (int qx = 0; qx < nq; ++qx) {
            const double w = quad.weights[qx] * quad.weights[qy];
            const std::array<double, 2> xi = {quad.points[qx], quad.points[qy]};
            const double det = map.det(xi);
            for (int j = 0; j < npc; ++j) {
              const int jx = j % (k + 1), jy = j / (k + 1);
              phi[j] = val[qx * (k + 1) + jx] * val[qy * (k + 1) + jy];
              const std::array<double, 2> gref = {der[qx * (k + 1) + jx] * val[qy * (k + 1) + jy],
                                                  val[qx * (k + 1) + jx] * der[qy * (k + 1) + jy]};
              cof[j] = map.cof_apply(xi, gref);
            }
            for (int i = 0; i < npc; ++i) {
              const double wi = w * phi[i];
              for (int j = 0; j < npc; ++j) {
                cblk[i * npc + j][0] += wi * cof[j][0];
                cblk[i * npc + j][1] += wi * cof[j][1];
                mblk[i * npc + j] += wi * phi[j] * det;
              }
            }
          }
      }

      for (int f = 0; f < 2 * dim; ++f) {
        const auto w = space.face_weighted_normal(cell, f);
        for (int r = 0; r < nfp; ++r)
          for (int s = 0; s < nfp; ++s) {
            auto& e = cblk[flocals[f][r] * npc + flocals[f][s]];
            for (int a = 0; a < dim; ++a) e[a] -= 0.5 * fm[r * nfp + s] * w[a];
          }
      }

      // The block is skew (c) and symmetric (m) in exact arithmetic; pick the
      // upper triangle as the representative so both hold bitwise.
      for (int li = 0; li < npc; ++li) {
        cblk[li * npc + li] = {};
        for (int lj = li + 1; lj < npc; ++lj) {
          for (int a = 0; a < dim; ++a) cblk[lj * npc + li][a] = -cblk[li * npc + lj][a];
          mblk[lj * npc + li] = mblk[li * npc + lj];
        }
      }

      for (int li = 0; li < npc; ++li) {
        const int i = space.dof(cell, li);
        double lump = 0.0;
        for (int lj = 0; lj < npc; ++lj) {
          const int e = g.find(i, space.dof(cell, lj));
          g.c[e] = cblk[li * npc + lj];
          g.m_consistent[e] = mblk[li * npc + lj];
          lump += mblk[li * npc + lj];
        }
        GDG_REQUIRE(lump > 0.0, "graph: nonpositive lumped mass at dof " << i);
        g.m_lumped[i] = lump;
      }
    }
  });

  // Cross-cell values, one interior face at a time so the pair (i,j), (j,i)
  // is written as an exact +e / -e couple.
  pool.loop(static_cast<std::int64_t>(ifaces.size()), [&](std::int64_t fb, std::int64_t fe, int) {
    for (auto fi = fb; fi < fe; ++fi) {
      const auto& face = ifaces[fi];
      const auto w = space.face_weighted_normal(face.cell[0], face.local_face[0]);
      for (int r = 0; r < nfp; ++r)
        for (int s = 0; s < nfp; ++s) {
          const int i = space.dof(face.cell[0], flocals[face.local_face[0]][r]);
          const int j = space.dof(face.cell[1], flocals[face.local_face[1]][s]);
          const double gram = fm[r * nfp + (face.flipped ? nfp - 1 - s : s)];
          const int eij = g.find(i, j), eji = g.find(j, i);
          GDG_REQUIRE(eij >= 0 && eji >= 0, "graph: missing cross-face edge");
          for (int a = 0; a < dim; ++a) {
            g.c[eij][a] = 0.5 * gram * w[a];
            g.c[eji][a] = -g.c[eij][a];
          }
        }
    }
  });

  pool.loop(n, [&](std::int64_t ib, std::int64_t ie, int) {
    for (int i = static_cast<int>(ib); i < ie; ++i)
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int back = g.find(g.col_idx[e], i);
        GDG_REQUIRE(back >= 0, "graph: stencil not symmetric at (" << i << "," << g.col_idx[e] << ")");
        g.transpose[e] = back;
      }
  });

  // Boundary vectors, merged per (dof, component).
  std::map<int, std::map<int, std::array<double, dim>>> brows;
  for (const auto& b : mesh.boundary) {
    const auto w = space.face_weighted_normal(b.cell, b.local_face);
    for (int r = 0; r < nfp; ++r) {
      auto& acc = brows[space.dof(b.cell, flocals[b.local_face][r])][b.component];
      for (int a = 0; a < dim; ++a) acc[a] += 0.5 * fint[r] * w[a];
    }
  }
  g.b_row_ptr.assign(n + 1, 0);
  g.b_dofs.reserve(brows.size());
  for (const auto& [i, comps] : brows) {
    g.b_row_ptr[i + 1] = static_cast<int>(comps.size());
    g.b_dofs.push_back(i);
  }
  for (int i = 0; i < n; ++i) g.b_row_ptr[i + 1] += g.b_row_ptr[i];
  g.b_terms.resize(g.b_row_ptr[n]);
  for (const auto& [i, comps] : brows) {
    int t = g.b_row_ptr[i];
    for (const auto& [component, vec] : comps) {
      const double len = norm2<dim>(vec);
      GDG_REQUIRE(len > 0.0, "graph: degenerate boundary vector at dof " << i);
      std::array<double, dim> normal;
      for (int a = 0; a < dim; ++a) normal[a] = vec[a] / len;
      g.b_terms[t++] = {component, vec, len, normal};
    }
  }

  g.volume = pool.sum(n, [&](std::int64_t ib, std::int64_t ie) {
    double s = 0.0;
    for (auto i = ib; i < ie; ++i) s += g.m_lumped[i];
    return s;
  });
  return g;
}

// Plain-text dump (one edge per line, then the boundary rows) for offline
// inspection.
template <int dim>
void dump_graph(const StencilGraph<dim>& g, std::ostream& os) {
  os << "# dofs " << g.n << " edges " << g.n_edges() << "\n";
  os << "# i j c_x" << (dim == 2 ? " c_y" : "") << " m_ij\n";
  for (int i = 0; i < g.n; ++i)
    for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
      os << i << " " << g.col_idx[e];
      for (int a = 0; a < dim; ++a) os << " " << g.c[e][a];
      os << " " << g.m_consistent[e] << "\n";
    }
  os << "# boundary: i component c_x" << (dim == 2 ? " c_y" : "") << "\n";
  for (int i = 0; i < g.n; ++i)
    for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) {
      os << i << " " << g.b_terms[t].component;
      for (int a = 0; a < dim; ++a) os << " " << g.b_terms[t].c[a];
      os << "\n";
    }
}

} // namespace gdg
