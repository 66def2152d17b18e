// SPDX-License-Identifier: MIT
// Convex flux-correction limiter. The difference between the high- and
// first-order updates is split into antisymmetric pairwise corrections;
// each is scaled back by a line search so the result stays inside local
// bounds on the density and the scaled entropy, gathered from the same
// states that certify the first-order update.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "gdg/gas.hpp"
#include "gdg/graph.hpp"
#include "gdg/low_order.hpp"
#include "gdg/parallel.hpp"

namespace gdg {

// Orders scaled entropies eps/rho^gamma without evaluating them: for
// rational gamma = num/den the comparison is polynomial, otherwise (or on
// over/underflow) it falls back to logarithms.
inline bool stilde_less(const GasModel& gas, double eps1, double rho1, double eps2, double rho2) {
  const int den = gas.exponent_den();
  if (den > 0) {
    const int num = gas.exponent_num();
    const double lhs = pow_int(eps1, den) * pow_int(rho2, num);
    const double rhs = pow_int(eps2, den) * pow_int(rho1, num);
    if (std::isfinite(lhs) && std::isfinite(rhs) && lhs != rhs) return lhs < rhs;
  }
  return std::log(eps1) - gas.gamma() * std::log(rho1) <
         std::log(eps2) - gas.gamma() * std::log(rho2);
}

// Per-row extrema over the update candidates (nodal states, pairwise bar
// states, boundary bar states), recorded while the first-order sweep visits
// them. The entropy minimum is kept as its (eps, rho) argument so no pow is
// spent until the row is finished.
template <int dim>
struct RowExtrema {
  explicit RowExtrema(const GasModel& gas) : gas_(&gas) {}

  void resize(int n) {
    rho_min.resize(n);
    rho_max.resize(n);
    eps_arg.resize(n);
    rho_arg.resize(n);
  }

  void begin_row(int i) {
    rho_min[i] = std::numeric_limits<double>::infinity();
    rho_max[i] = -std::numeric_limits<double>::infinity();
    eps_arg[i] = std::numeric_limits<double>::infinity();
    rho_arg[i] = 1.0;
  }

  void candidate(int i, const State<dim>& v) {
    rho_min[i] = std::min(rho_min[i], v[0]);
    rho_max[i] = std::max(rho_max[i], v[0]);
    const double eps = GasModel::internal_energy(v);
    if (!std::isfinite(eps_arg[i]) || stilde_less(*gas_, eps, v[0], eps_arg[i], rho_arg[i])) {
      eps_arg[i] = eps;
      rho_arg[i] = v[0];
    }
  }

  std::vector<double> rho_min, rho_max, eps_arg, rho_arg;

 private:
  const GasModel* gas_;
};

struct LimiterBounds {
  std::vector<double> rho_min, rho_max, stilde_min;
};

// Widens the one-layer extrema to the two-layer stencil and applies the
// mesh-dependent relaxation 1 -/+ relax_i. Degenerate (nonpositive) lower
// bounds are clamped to zero so they never ask for more than admissibility.
template <int dim>
void build_bounds(const GasModel& gas, const StencilGraph<dim>& g, const RowExtrema<dim>& ext,
                  const std::vector<double>& relax, WorkerPool& pool, LimiterBounds& b) {
  b.rho_min.resize(g.n);
  b.rho_max.resize(g.n);
  b.stilde_min.resize(g.n);
  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int) {
    for (int i = static_cast<int>(rb); i < re; ++i) {
      double rmin = ext.rho_min[i], rmax = ext.rho_max[i];
      double ea = ext.eps_arg[i], ra = ext.rho_arg[i];
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (j == i) continue;
        rmin = std::min(rmin, ext.rho_min[j]);
        rmax = std::max(rmax, ext.rho_max[j]);
        if (stilde_less(gas, ext.eps_arg[j], ext.rho_arg[j], ea, ra)) {
          ea = ext.eps_arg[j];
          ra = ext.rho_arg[j];
        }
      }
      const double down = std::max(1.0 - relax[i], 0.0);
      const double s = ea * std::pow(ra, -gas.gamma());
      b.rho_min[i] = std::max(rmin, 0.0) * down;
      b.rho_max[i] = (1.0 + relax[i]) * rmax;
      b.stilde_min[i] = std::max(s, 0.0) * down;
    }
  });
}

// rho within [rho_min, rho_max] and eps/rho^gamma >= stilde_min, the latter
// checked through w = rho E - |m|^2/2 = rho eps, which is polynomial in the
// state. For rational gamma with odd denominator the power comparison is
// sign-safe even when w < 0.
template <int dim>
bool state_in_bounds(const GasModel& gas, double rho_min, double rho_max, double stilde_min,
                     const State<dim>& v) {
  if (!(v[0] >= rho_min && v[0] <= rho_max)) return false;
  double w = v[0] * v[dim + 1];
  for (int a = 0; a < dim; ++a) w -= 0.5 * v[1 + a] * v[1 + a];
  const int den = gas.exponent_den();
  if (den > 0 && den % 2 == 1)
    return pow_int(w, den) >= pow_int(stilde_min, den) * pow_int(v[0], gas.exponent_num() + den);
  return w >= stilde_min * std::pow(v[0], 1.0 + gas.gamma());
}

// Largest l in [0, l_cap] with u0 + l p inside the bounds. The feasible set
// is an interval containing 0 (up to roundoff at the left end). Density is
// resolved in closed form; the entropy constraint is a safeguarded Newton
// iteration on a polynomial, returning the certified-feasible bracket end.
template <int dim>
double limit_candidate(const GasModel& gas, double rho_min, double rho_max, double stilde_min,
                       const State<dim>& u0, const State<dim>& p, double l_cap) {
  bool zero = true;
  for (int k = 0; k < dim + 2; ++k)
    if (p[k] != 0.0) zero = false;
  if (zero) return l_cap;

  {
    State<dim> full = u0;
    axpy(l_cap, p, full);
    if (state_in_bounds<dim>(gas, rho_min, rho_max, stilde_min, full)) return l_cap;
  }

  double hi = l_cap;
  if (p[0] > 0.0) hi = std::min(hi, (rho_max - u0[0]) / p[0]);
  if (p[0] < 0.0) hi = std::min(hi, (rho_min - u0[0]) / p[0]);
  if (!(hi > 0.0)) return 0.0;

  const int den = gas.exponent_den();
  const bool poly = den > 0 && den % 2 == 1;
  const int num = poly ? gas.exponent_num() : 0;
  const double sd = poly ? pow_int(stilde_min, den) : 0.0;

  const auto compose = [&](double l, State<dim>& v) {
    v = u0;
    axpy(l, p, v);
  };
  const auto psi = [&](double l) {
    State<dim> v;
    compose(l, v);
    double w = v[0] * v[dim + 1];
    for (int a = 0; a < dim; ++a) w -= 0.5 * v[1 + a] * v[1 + a];
    if (poly) return pow_int(w, den) - sd * pow_int(v[0], num + den);
    return w - stilde_min * std::pow(v[0], 1.0 + gas.gamma());
  };
  const auto dpsi = [&](double l) {
    State<dim> v;
    compose(l, v);
    double w = v[0] * v[dim + 1];
    for (int a = 0; a < dim; ++a) w -= 0.5 * v[1 + a] * v[1 + a];
    double dw = p[0] * v[dim + 1] + v[0] * p[dim + 1];
    for (int a = 0; a < dim; ++a) dw -= v[1 + a] * p[1 + a];
    if (poly)
      return den * pow_int(w, den - 1) * dw -
             sd * (num + den) * pow_int(v[0], num + den - 1) * p[0];
    return dw - stilde_min * (1.0 + gas.gamma()) * std::pow(v[0], gas.gamma()) * p[0];
  };

  if (!(psi(0.0) >= 0.0)) return 0.0;
  double phi = psi(hi);
  if (phi >= 0.0) return hi;

  double lo = 0.0;
  for (int it = 0; it < 50 && hi - lo > 1e-10; ++it) {
    double x = hi - phi / dpsi(hi);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    const double px = psi(x);
    if (px >= 0.0) {
      lo = x;
    } else {
      hi = x;
      phi = px;
    }
  }
  return lo;
}

// Two limiting passes over the pairwise corrections
//   A_ij = dt (dH_ij - dL_ij)(u_j - u_i) - m_ij (delta_j - delta_i),
// delta = u_high - u. Pass one limits A against the bounds from u_low, pass
// two limits the leftover (1 - l) A from the already updated point against
// the same bounds. Correction factors are symmetrized by taking the minimum
// over the two edge directions, so conservation is exact. Returns the
// smallest effective factor for diagnostics.
template <int dim>
double limited_update(const GasModel& gas, const StencilGraph<dim>& g,
                      const LimiterBounds& bounds, const std::vector<State<dim>>& u,
                      const std::vector<State<dim>>& u_low, const std::vector<State<dim>>& u_high,
                      const GraphViscosity& low, const GraphViscosity& high, double dt,
                      WorkerPool& pool, std::vector<double>& cand, std::vector<double>& cand2,
                      std::vector<State<dim>>& mid, std::vector<State<dim>>& out) {
  const auto correction = [&](int i, int j, int e) {
    const double dd = dt * (high.d[e] - low.d[e]);
    const double mc = g.m_consistent[e];
    State<dim> a;
    for (int k = 0; k < dim + 2; ++k)
      a[k] = dd * (u[j][k] - u[i][k]) - mc * ((u_high[j][k] - u[j][k]) - (u_high[i][k] - u[i][k]));
    return a;
  };

  cand.assign(g.col_idx.size(), 1.0);
  cand2.assign(g.col_idx.size(), 1.0);
  mid.resize(g.n);
  out.resize(g.n);

  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int) {
    for (int i = static_cast<int>(rb); i < re; ++i) {
      const int row_len = g.row_ptr[i + 1] - g.row_ptr[i];
      const double scale = (row_len + 1) / g.m_lumped[i];
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (j == i) continue;
        const State<dim> pij = scale * correction(i, j, e);
        cand[e] = limit_candidate<dim>(gas, bounds.rho_min[i], bounds.rho_max[i], bounds.stilde_min[i],
                                  u_low[i], pij, 1.0);
      }
    }
  });

  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int) {
    for (int i = static_cast<int>(rb); i < re; ++i) {
      State<dim> acc = u_low[i];
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (j == i) continue;
        const double l = std::min(cand[e], cand[g.transpose[e]]);
        axpy(l / g.m_lumped[i], correction(i, j, e), acc);
      }
      mid[i] = acc;
    }
  });

  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int) {
    for (int i = static_cast<int>(rb); i < re; ++i) {
      const int row_len = g.row_ptr[i + 1] - g.row_ptr[i];
      const double scale = (row_len + 1) / g.m_lumped[i];
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (j == i) continue;
        const double l1 = std::min(cand[e], cand[g.transpose[e]]);
        const State<dim> pij = (scale * (1.0 - l1)) * correction(i, j, e);
        cand2[e] = limit_candidate<dim>(gas, bounds.rho_min[i], bounds.rho_max[i], bounds.stilde_min[i],
                                   mid[i], pij, 1.0);
      }
    }
  });

  std::array<double, WorkerPool::chunk_grid> part;
  part.fill(1.0);
  pool.loop(g.n, [&](std::int64_t rb, std::int64_t re, int chunk) {
    double lmin = 1.0;
    for (int i = static_cast<int>(rb); i < re; ++i) {
      State<dim> acc = mid[i];
      for (int e = g.row_ptr[i]; e < g.row_ptr[i + 1]; ++e) {
        const int j = g.col_idx[e];
        if (j == i) continue;
        const double l1 = std::min(cand[e], cand[g.transpose[e]]);
        const double l2 = std::min(cand2[e], cand2[g.transpose[e]]);
        axpy(l2 * (1.0 - l1) / g.m_lumped[i], correction(i, j, e), acc);
        lmin = std::min(lmin, l1 + (1.0 - l1) * l2);
      }
      GDG_REQUIRE(gas.admissible(acc),
                  "limited update: inadmissible state at dof " << i << " (rho = " << acc[0] << ")");
      out[i] = acc;
    }
    part[chunk] = std::min(part[chunk], lmin);
  });
  double lmin = 1.0;
  for (double v : part) lmin = std::min(lmin, v);
  return lmin;
}

} // namespace gdg
