// SPDX-License-Identifier: MIT
// High-order update: consistent cell mass blocks combined with graph
// viscosities driven by an entropy production indicator. The viscosity never
// exceeds the first-order value and shrinks toward a collocation floor where
// the solution is smooth.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gdg/gas.hpp"
#include "gdg/graph.hpp"
#include "gdg/low_order.hpp"
#include "gdg/parallel.hpp"
#include "gdg/space.hpp"

namespace gdg {

// Normalized entropy production per node. The numerator is the commutator
// between the entropy flux and the linearized entropy of the conservative
// residual; the denominator majorizes it term by term, so values live in
// [0, 1] with 1 meaning the local entropy balance is maximally violated.
template <int dim>
void entropy_indicator(const GasModel& gas, const StencilGraph<dim>& g,
                       const std::vector<State<dim>>& u, const NodeCache& cache, WorkerPool& pool,
                       std::vector<double>& ind) {
  ind.resize(g.n);
  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int) {
    for (int i = static_cast<int>(rb); i < re; ++i) {
      State<dim> grad = gas.grad_rho_entropy(u[i]);
      grad[0] -= cache.s[i];
      double t1 = 0.0, t2 = 0.0, maj = 0.0;
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (j == i) continue;
        double mc = 0.0;
        for (int a = 0; a < dim; ++a) mc += u[j][1 + a] * g.c[e][a];
        t1 += mc * (cache.s[j] - cache.s[i]);
        // Difference against the row state: on interior rows the c-row sums
        // vanish so this changes nothing, while on boundary rows it keeps
        // constant fields residual-free.
        const State<dim> f = gas.flux_dot(u[j], cache.p[j], g.c[e].data());
        const State<dim> fi = gas.flux_dot(u[i], cache.p[i], g.c[e].data());
        for (int k = 0; k < dim + 2; ++k) {
          t2 += grad[k] * (f[k] - fi[k]);
          maj += std::abs(grad[k]) * std::abs(f[k] - fi[k]);
        }
      }
      const double den = std::abs(t1) + maj;
      ind[i] = den > 0.0 ? std::abs(t1 - t2) / den : 0.0;
    }
  });
}

// Lobatto nodes place face nodes of adjacent cells at identical physical
// points, and the jump terms between such twins must not lose all of their
// dissipation. Twins keep the full first-order viscosity for odd degrees and
// an h^(1/2) fraction for even ones; every other pair gets no floor.
template <int dim>
std::vector<double> min_viscosity_factor(const DgSpace<dim>& space, const StencilGraph<dim>& g) {
  std::vector<double> factor(g.col_idx.size(), 0.0);
  const double p_k = (space.degree() % 2 == 0) ? 0.5 : 0.0;
  for (const auto& f : interior_faces(space.mesh())) {
    const auto la = space.face_locals(f.local_face[0]);
    const auto lb = space.face_locals(f.local_face[1]);
    const int nfp = static_cast<int>(la.size());
    for (int r = 0; r < nfp; ++r) {
      const int s = f.flipped ? nfp - 1 - r : r;
      const int i = space.dof(f.cell[0], la[r]);
      const int j = space.dof(f.cell[1], lb[s]);
      const int e = g.find(i, j);
      GDG_REQUIRE(e >= 0, "twin pair (" << i << ", " << j << ") missing from the stencil");
      double val = 1.0;
      if (p_k != 0.0) {
        const double h = std::pow(0.5 * (g.m_lumped[i] + g.m_lumped[j]) / g.volume, 1.0 / dim);
        val = std::pow(h, p_k);
      }
      factor[e] = val;
      factor[g.transpose[e]] = val;
    }
  }
  return factor;
}

inline double entropy_viscosity_constant(int degree) {
  return degree <= 1 ? 1.0 : (degree == 2 ? 0.5 : 0.25);
}

// d^H = d^L * max(floor, min(c_ev * max(N_i, N_j), 1)); boundary viscosities
// are kept at their first-order values.
template <int dim>
void compute_high_viscosity(const StencilGraph<dim>& g, const std::vector<int>& diag,
                            const GraphViscosity& low, const std::vector<double>& min_factor,
                            const std::vector<double>& ind, double c_ev, WorkerPool& pool,
                            GraphViscosity& high) {
  high.d.resize(low.d.size());
  high.d_b = low.d_b;
  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int) {
    for (int i = static_cast<int>(rb); i < re; ++i) {
      double sum = 0.0;
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (j == i) continue;
        const double blend =
            std::max(min_factor[e], std::min(c_ev * std::max(ind[i], ind[j]), 1.0));
        high.d[e] = low.d[e] * blend;
        sum += high.d[e];
      }
      for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) sum += high.d_b[t];
      high.d[diag[i]] = -sum;
    }
  });
}

// Dense SPD inverse via Cholesky; block sizes stay tiny (at most 16).
inline void invert_spd(int n, const double* m, double* minv, std::vector<double>& work) {
  work.assign(static_cast<std::size_t>(2) * n * n, 0.0);
  double* l = work.data();
  double* li = work.data() + n * n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = m[i * n + j];
      for (int k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        GDG_REQUIRE(s > 0.0, "mass block is not positive definite");
        l[i * n + i] = std::sqrt(s);
      } else {
        l[i * n + j] = s / l[j * n + j];
      }
    }
  for (int c = 0; c < n; ++c)
    for (int i = c; i < n; ++i) {
      double s = (i == c) ? 1.0 : 0.0;
      for (int k = c; k < i; ++k) s -= l[i * n + k] * li[k * n + c];
      li[i * n + c] = s / l[i * n + i];
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = std::max(i, j); k < n; ++k) s += li[k * n + i] * li[k * n + j];
      minv[i * n + j] = s;
    }
}

// Inverted consistent mass blocks, one per cell. Blocks are read back from
// the assembled graph so that the update and the flux correction algebra see
// bit-identical mass entries.
template <int dim>
class CellMassSolver {
 public:
  static constexpr int max_block = 16;

  CellMassSolver() = default;

  CellMassSolver(const DgSpace<dim>& space, const StencilGraph<dim>& g, WorkerPool& pool)
      : npc_(space.nodes_per_cell()) {
    GDG_REQUIRE(npc_ <= max_block, "mass solver supports at most degree 3 blocks");
    const int nc = space.mesh().n_cells();
    inv_.resize(static_cast<std::size_t>(nc) * npc_ * npc_);
    pool.loop(nc, [&](std::int64_t cb, std::int64_t ce, int) {
      std::vector<double> block(static_cast<std::size_t>(npc_) * npc_), work;
      for (int c = static_cast<int>(cb); c < ce; ++c) {
        for (int r = 0; r < npc_; ++r) {
          const int i = space.dof(c, r);
          for (int s = 0; s < npc_; ++s) {
            const int e = g.find(i, space.dof(c, s));
            GDG_REQUIRE(e >= 0, "mass block entry missing from the stencil");
            block[r * npc_ + s] = g.m_consistent[e];
          }
        }
        invert_spd(npc_, block.data(), &inv_[static_cast<std::size_t>(c) * npc_ * npc_], work);
      }
    });
  }

  int block_size() const { return npc_; }

  // x := M_cell^{-1} rhs, both in cell-local layout.
  void apply_inverse(int cell, const State<dim>* rhs, State<dim>* x) const {
    const double* inv = &inv_[static_cast<std::size_t>(cell) * npc_ * npc_];
    for (int r = 0; r < npc_; ++r) {
      State<dim> acc{};
      for (int s = 0; s < npc_; ++s) axpy(inv[r * npc_ + s], rhs[s], acc);
      x[r] = acc;
    }
  }

  // Reference oracle: the same block by direct quadrature one order hotter
  // than the assembly rule.
  static std::vector<double> cell_gram(const DgSpace<dim>& space, int cell) {
    const int npc = space.nodes_per_cell();
    const int k = space.degree();
    const auto q = gauss_rule(k + 2);
    const int nq = static_cast<int>(q.points.size());
    std::vector<double> out(static_cast<std::size_t>(npc) * npc, 0.0);
    std::vector<double> phi(npc);
    const auto& map = space.cell_map(cell);
    std::array<int, dim> iq{};
    const int total = [&] {
      int t = 1;
      for (int a = 0; a < dim; ++a) t *= nq;
      return t;
    }();
    for (int flat = 0; flat < total; ++flat) {
      int rem = flat;
      std::array<double, dim> xi{};
      double w = 1.0;
      for (int a = 0; a < dim; ++a) {
        iq[a] = rem % nq;
        rem /= nq;
        xi[a] = q.points[iq[a]];
        w *= q.weights[iq[a]];
      }
      for (int l = 0; l < npc; ++l) {
        const auto t = space.local_tuple(l);
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= space.basis().value(t[a], xi[a]);
        phi[l] = v;
      }
      const double wd = w * map.det(xi);
      for (int r = 0; r < npc; ++r)
        for (int s = 0; s < npc; ++s) out[r * npc + s] += wd * phi[r] * phi[s];
    }
    return out;
  }

 private:
  int npc_ = 0;
  std::vector<double> inv_;
};

// One forward-Euler substep of the high-order scheme. No admissibility is
// claimed or checked here; the limiter is in charge of that. Returns the
// boundary flux for the conservation ledger, identical in form to the
// first-order one.
template <int dim>
State<dim> high_order_update(const GasModel& gas, const StencilGraph<dim>& g,
                             const std::vector<State<dim>>& u, const NodeCache& cache,
                             const std::vector<State<dim>>& bstate, const GraphViscosity& visc,
                             const CellMassSolver<dim>& mass, double dt, WorkerPool& pool,
                             std::vector<State<dim>>& residual, std::vector<State<dim>>& out) {
  out.resize(g.n);
  residual.resize(g.n);
  std::array<State<dim>, WorkerPool::chunk_grid> ledger{};
  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int chunk) {
    State<dim> bf{};
    for (int i = static_cast<int>(rb); i < re; ++i) {
      State<dim> r{};
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (j == i) continue;
        const State<dim> f = gas.flux_dot(u[j], cache.p[j], g.c[e].data());
        for (int k = 0; k < dim + 2; ++k) r[k] += f[k] - visc.d[e] * (u[j][k] - u[i][k]);
      }
      for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) {
        const auto& bt = g.b_terms[t];
        const State<dim> f = gas.flux_dot(bstate[t], gas.pressure(bstate[t]), bt.c.data());
        const State<dim> fi = gas.flux_dot(u[i], cache.p[i], bt.c.data());
        for (int k = 0; k < dim + 2; ++k) {
          const double term = f[k] - visc.d_b[t] * (bstate[t][k] - u[i][k]);
          r[k] += term;
          // The ledger carries the full skew flux; the interior part of the
          // row telescopes onto the boundary through the partition of unity.
          bf[k] += dt * (term + fi[k]);
        }
      }
      residual[i] = r;
    }
    ledger[chunk] = ledger[chunk] + bf;
  });

  const int npc = mass.block_size();
  pool.loop(g.n / npc, [&](std::int64_t cb, std::int64_t ce, int) {
    std::array<State<dim>, CellMassSolver<dim>::max_block> x;
    for (int c = static_cast<int>(cb); c < ce; ++c) {
      mass.apply_inverse(c, &residual[static_cast<std::size_t>(c) * npc], x.data());
      for (int r = 0; r < npc; ++r) {
        const int i = c * npc + r;
        out[i] = u[i];
        axpy(-dt, x[r], out[i]);
      }
    }
  });

  State<dim> total{};
  for (const auto& part : ledger) total = total + part;
  return total;
}

} // namespace gdg
