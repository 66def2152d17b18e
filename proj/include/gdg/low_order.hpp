// SPDX-License-Identifier: MIT
// First-order invariant-set preserving update on the stencil graph: graph
// viscosities from the guaranteed wavespeed bound, the CFL bound, and the
// bar-state (convex combination) form of the update. The same viscosities
// feed the high-order scheme and the convex limiter.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "gdg/gas.hpp"
#include "gdg/graph.hpp"
#include "gdg/parallel.hpp"
#include "gdg/wavespeed.hpp"

namespace gdg {

// Pointwise thermodynamic quantities shared by every sweep of a stage. The
// specific entropy is only needed by the entropy-viscosity commutator, so
// first-order-only runs skip it.
struct NodeCache {
  std::vector<double> p, a, pz, s;
};

template <int dim>
void build_node_cache(const GasModel& gas, const std::vector<State<dim>>& u, bool with_entropy,
                      WorkerPool& pool, NodeCache& cache) {
  const auto n = static_cast<std::int64_t>(u.size());
  cache.p.resize(n);
  cache.a.resize(n);
  cache.pz.resize(n);
  if (with_entropy) cache.s.resize(n);
  const double ez = entropy_exponent(gas);
  pool.loop(n, [&](std::int64_t b, std::int64_t e, int) {
    for (auto i = b; i < e; ++i) {
      const double p = gas.pressure(u[i]);
      GDG_REQUIRE(u[i][0] > 0.0 && p > 0.0,
                  "node cache: inadmissible state at dof " << i << " (rho = " << u[i][0]
                                                           << ", p = " << p << ")");
      cache.p[i] = p;
      cache.a[i] = gas.sound_speed(u[i][0], p);
      cache.pz[i] = std::pow(p, ez);
      if (with_entropy) cache.s[i] = std::log(p) - gas.gamma() * std::log(u[i][0]);
    }
  });
}

// Viscosities in the CSR layout of the stencil; the diagonal slot of row i
// holds d_ii = -sum_{j != i} d_ij - sum_b d_i^b. Boundary viscosities are
// stored per boundary term.
struct GraphViscosity {
  std::vector<double> d;
  std::vector<double> d_b;
};

template <int dim>
std::vector<int> build_diagonal(const StencilGraph<dim>& g) {
  std::vector<int> diag(g.n);
  for (int i = 0; i < g.n; ++i) {
    diag[i] = g.find(i, i);
    GDG_REQUIRE(diag[i] >= 0, "graph: row " << i << " is missing its diagonal entry");
  }
  return diag;
}

// Off-diagonal d_ij, one undirected edge at a time so that d_ij = d_ji holds
// bitwise. The shared value uses the larger of the two vector norms and
// therefore dominates both one-sided definitions even when the assembled
// c_ij, c_ji differ in the last ulp.
template <int dim>
void compute_low_viscosity(const GasModel& gas, const StencilGraph<dim>& g,
                           const std::vector<int>& diag, const std::vector<State<dim>>& u,
                           const NodeCache& cache, const std::vector<State<dim>>& bstate,
                           WorkerPool& pool, GraphViscosity& visc) {
  visc.d.assign(g.col_idx.size(), 0.0);
  visc.d_b.assign(g.b_terms.size(), 0.0);

  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int) {
    for (int i = static_cast<int>(rb); i < re; ++i)
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (j <= i) continue;
        const int et = g.transpose[e];
        const double len = norm2<dim>(g.c[e]);
        const double len_t = norm2<dim>(g.c[et]);
        const double cmax = std::max(len, len_t);
        if (cmax == 0.0) continue;
        std::array<double, dim> nrm;
        if (len >= len_t)
          for (int a = 0; a < dim; ++a) nrm[a] = g.c[e][a] / len;
        else
          for (int a = 0; a < dim; ++a) nrm[a] = -g.c[et][a] / len_t;
        double vni = 0.0, vnj = 0.0;
        for (int a = 0; a < dim; ++a) {
          vni += u[i][1 + a] * nrm[a];
          vnj += u[j][1 + a] * nrm[a];
        }
        const WaveTrace ti{u[i][0], vni / u[i][0], cache.p[i], cache.a[i], cache.pz[i]};
        const WaveTrace tj{u[j][0], vnj / u[j][0], cache.p[j], cache.a[j], cache.pz[j]};
        const double d = cmax * max_wavespeed(gas, ti, tj);
        visc.d[e] = d;
        visc.d[et] = d;
      }
  });

  // Boundary viscosities; the boundary data acts as the left state of the
  // projected Riemann problem along the outward normal.
  pool.loop(static_cast<std::int64_t>(g.b_dofs.size()), [&](std::int64_t bb, std::int64_t be, int) {
    for (auto bi = bb; bi < be; ++bi) {
      const int i = g.b_dofs[bi];
      for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) {
        const auto& bt = g.b_terms[t];
        const WaveTrace tb = make_wave_trace<dim>(gas, bstate[t], bt.normal.data());
        double vni = 0.0;
        for (int a = 0; a < dim; ++a) vni += u[i][1 + a] * bt.normal[a];
        const WaveTrace ti{u[i][0], vni / u[i][0], cache.p[i], cache.a[i], cache.pz[i]};
        visc.d_b[t] = bt.norm * max_wavespeed(gas, tb, ti);
      }
    }
  });

  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int) {
    for (int i = static_cast<int>(rb); i < re; ++i) {
      double s = 0.0;
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e)
        if (e != diag[i]) s += visc.d[e];
      for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) s += visc.d_b[t];
      visc.d[diag[i]] = -s;
    }
  });
}

// Largest forward-Euler step honoring -2 dt d_ii <= m_i on every row.
template <int dim>
double cfl_time_step(const StencilGraph<dim>& g, const std::vector<int>& diag,
                     const GraphViscosity& visc, WorkerPool& pool) {
  std::array<double, WorkerPool::chunk_grid> part;
  part.fill(std::numeric_limits<double>::infinity());
  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int chunk) {
    double m = std::numeric_limits<double>::infinity();
    for (int i = static_cast<int>(rb); i < re; ++i) {
      const double dii = visc.d[diag[i]];
      if (dii < 0.0) m = std::min(m, g.m_lumped[i] / (-2.0 * dii));
    }
    part[chunk] = m;
  });
  double dt = std::numeric_limits<double>::infinity();
  for (double m : part) dt = std::min(dt, m);
  GDG_REQUIRE(dt > 0.0 && std::isfinite(dt), "CFL bound degenerate (dt = " << dt << ")");
  return dt;
}

// Intermediate state of the projected Riemann fan between two coupled nodes;
// admissible whenever d dominates the fan's maximum wavespeed times |c|.
template <int dim>
State<dim> bar_state(const GasModel& gas, const State<dim>& ui, const State<dim>& uj, double pi,
                     double pj, const std::array<double, dim>& c, double d) {
  State<dim> bar = 0.5 * (ui + uj);
  State<dim> df = gas.flux_dot(uj, pj, c.data());
  const State<dim> fi = gas.flux_dot(ui, pi, c.data());
  for (int k = 0; k < dim + 2; ++k) df[k] -= fi[k];
  axpy(-0.5 / d, df, bar);
  return bar;
}

// Hook protocol for piggybacking on the update sweep; the limiter gathers its
// stencil extrema this way. Methods are called with the row index so a shared
// hook object stays race-free under the chunked row loop.
struct NoRowHook {
  void begin_row(int) {}
  template <std::size_t n>
  void candidate(int, const std::array<double, n>&) {}
};

// Forward-Euler substep in bar-state form:
//   u_i^+ = (1 + 2 dt d_ii / m_i) u_i
//         + sum_j (2 dt d_ij / m_i) ubar_ij + sum_b (2 dt d_i^b / m_i) ubar_i^b.
// Every weight is nonnegative under the CFL bound, so admissibility of the
// output reduces to admissibility of the bar states. Returns the accumulated
// boundary flux sum_i sum_b dt [f(u^b) c_i^b - d_i^b (u^b - u_i)], which
// balances the conservation ledger: sum_i m_i u_i^+ = sum_i m_i u_i - flux.
template <int dim, class RowHook = NoRowHook>
State<dim> low_order_update(const GasModel& gas, const StencilGraph<dim>& g,
                            const std::vector<int>& diag, const std::vector<State<dim>>& u,
                            const NodeCache& cache, const std::vector<State<dim>>& bstate,
                            const GraphViscosity& visc, double dt, WorkerPool& pool,
                            std::vector<State<dim>>& out, RowHook* hook = nullptr) {
  out.resize(g.n);
  std::array<State<dim>, WorkerPool::chunk_grid> ledger{};
  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int chunk) {
    State<dim> bf{};
    for (int i = static_cast<int>(rb); i < re; ++i) {
      const double mi = g.m_lumped[i];
      const double wii = 1.0 + 2.0 * dt * visc.d[diag[i]] / mi;
      GDG_REQUIRE(wii > -1e-12, "low-order update: dt = " << dt
                                                          << " violates the CFL bound at dof " << i);
      if (hook) hook->begin_row(i);
      State<dim> acc = wii * u[i];
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (hook) hook->candidate(i, u[j]);
        if (j == i) continue;
        const double d = visc.d[e];
        if (d <= 0.0) continue;
        const State<dim> bar = bar_state<dim>(gas, u[i], u[j], cache.p[i], cache.p[j], g.c[e], d);
        if (hook) hook->candidate(i, bar);
        axpy(2.0 * dt * d / mi, bar, acc);
      }
      for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) {
        const auto& bt = g.b_terms[t];
        const State<dim>& ub = bstate[t];
        const double pb = gas.pressure(ub);
        const double d = visc.d_b[t];
        State<dim> flux = gas.flux_dot(ub, pb, bt.c.data());
        const State<dim> fi = gas.flux_dot(u[i], cache.p[i], bt.c.data());
        for (int k = 0; k < dim + 2; ++k) flux[k] += fi[k] - d * (ub[k] - u[i][k]);
        axpy(dt, flux, bf);
        if (d <= 0.0) continue;
        const State<dim> bar = bar_state<dim>(gas, u[i], ub, cache.p[i], pb, bt.c, d);
        if (hook) hook->candidate(i, bar);
        axpy(2.0 * dt * d / mi, bar, acc);
      }
      GDG_REQUIRE(gas.admissible(acc), "low-order update: inadmissible state at dof "
                                           << i << " (rho = " << acc[0] << ")");
      out[i] = acc;
    }
    ledger[chunk] = ledger[chunk] + bf;
  });
  State<dim> total{};
  for (const auto& part : ledger) total = total + part;
  return total;
}

// Textbook flux form of the same update, kept serial; cross-checks the
// bar-state form in the tests.
template <int dim>
void low_order_update_direct(const GasModel& gas, const StencilGraph<dim>& g,
                             const std::vector<State<dim>>& u, const std::vector<State<dim>>& bstate,
                             const GraphViscosity& visc, double dt, std::vector<State<dim>>& out) {
  out.resize(g.n);
  for (int i = 0; i < g.n; ++i) {
    State<dim> r{};
    for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
      const int j = g.col_idx[e];
      if (j == i) continue;
      const State<dim> f = gas.flux_dot(u[j], gas.pressure(u[j]), g.c[e].data());
      for (int k = 0; k < dim + 2; ++k) r[k] += f[k] - visc.d[e] * (u[j][k] - u[i][k]);
    }
    for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) {
      const auto& bt = g.b_terms[t];
      const State<dim> f = gas.flux_dot(bstate[t], gas.pressure(bstate[t]), bt.c.data());
      for (int k = 0; k < dim + 2; ++k) r[k] += f[k] - visc.d_b[t] * (bstate[t][k] - u[i][k]);
    }
    out[i] = u[i];
    axpy(-dt / g.m_lumped[i], r, out[i]);
  }
}

// Mass-weighted sum over all rows, combined in deterministic chunk order.
template <int dim>
State<dim> mass_weighted_sum(const StencilGraph<dim>& g, const std::vector<State<dim>>& u,
                             WorkerPool& pool) {
  std::array<State<dim>, WorkerPool::chunk_grid> part{};
  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int chunk) {
    State<dim> acc{};
    State<dim> comp{};
    for (auto i = rb; i < re; ++i)
      for (int k = 0; k < dim + 2; ++k) {
        // Kahan correction keeps the conservation diagnostic meaningful on
        // fine meshes where plain summation noise would mask the balance.
        const double y = g.m_lumped[i] * u[i][k] - comp[k];
        const double t = acc[k] + y;
        comp[k] = (t - acc[k]) - y;
        acc[k] = t;
      }
    part[chunk] = acc;
  });
  State<dim> total{};
  for (const auto& p : part) total = total + p;
  return total;
}

// Row-wise residual of the discrete entropy inequality for the pair
// eta = -rho s, q = -m s, normalized by m_i / dt. Nonpositive up to roundoff
// for any first-order update obtained with these viscosities. Returns the
// largest normalized residual over all rows.
template <int dim>
double entropy_residuals(const GasModel& gas, const StencilGraph<dim>& g,
                         const std::vector<State<dim>>& u, const std::vector<State<dim>>& out,
                         const std::vector<State<dim>>& bstate, const GraphViscosity& visc,
                         double dt, WorkerPool& pool, std::vector<double>* per_node = nullptr) {
  if (per_node) per_node->assign(g.n, 0.0);
  std::array<double, WorkerPool::chunk_grid> part;
  part.fill(-std::numeric_limits<double>::infinity());
  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int chunk) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = static_cast<int>(rb); i < re; ++i) {
      const double si = gas.specific_entropy(u[i]);
      const double eta_i = -u[i][0] * si;
      double r = g.m_lumped[i] * (-out[i][0] * gas.specific_entropy(out[i]) - eta_i) / dt;
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (j == i) continue;
        const double sj = gas.specific_entropy(u[j]);
        double mc = 0.0;
        for (int a = 0; a < dim; ++a) mc += u[j][1 + a] * g.c[e][a];
        r += -mc * sj - visc.d[e] * (-u[j][0] * sj - eta_i);
      }
      for (int t = g.b_row_ptr[i]; t < g.b_row_ptr[i + 1]; ++t) {
        const auto& bt = g.b_terms[t];
        const double sb = gas.specific_entropy(bstate[t]);
        double mc = 0.0;
        for (int a = 0; a < dim; ++a) mc += bstate[t][1 + a] * bt.c[a];
        r += -mc * sb - visc.d_b[t] * (-bstate[t][0] * sb - eta_i);
      }
      const double normalized = r * dt / g.m_lumped[i];
      if (per_node) (*per_node)[i] = normalized;
      worst = std::max(worst, normalized);
    }
    part[chunk] = worst;
  });
  double worst = -std::numeric_limits<double>::infinity();
  for (double p : part) worst = std::max(worst, p);
  return worst;
}

} // namespace gdg
