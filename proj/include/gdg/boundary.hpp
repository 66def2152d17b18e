// SPDX-License-Identifier: MIT
// Construction of boundary data states, one per (dof, boundary component)
// pair. A corner dof carries one state per adjacent component, each with its
// own normal taken from the assembled boundary vectors.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "gdg/gas.hpp"
#include "gdg/graph.hpp"
#include "gdg/parallel.hpp"
#include "gdg/space.hpp"

namespace gdg {

enum class BoundaryKind { dirichlet, slip, supersonic, characteristic, do_nothing };

// Reflect the momentum across the tangent plane; density and energy are kept.
template <int dim>
State<dim> slip_state(const State<dim>& u, const std::array<double, dim>& n) {
  double mn = 0.0;
  for (int a = 0; a < dim; ++a) mn += u[1 + a] * n[a];
  State<dim> r = u;
  for (int a = 0; a < dim; ++a) r[1 + a] -= 2.0 * mn * n[a];
  return r;
}

// Full upwind selection; only valid when the normal velocity is sonic or
// faster on the current-state side.
template <int dim>
State<dim> supersonic_state(const GasModel& gas, const State<dim>& u, const State<dim>& dirichlet,
                            const std::array<double, dim>& n) {
  double vn = 0.0;
  for (int a = 0; a < dim; ++a) vn += u[1 + a] * n[a];
  vn /= u[0];
  const double a_snd = gas.sound_speed(u);
  GDG_REQUIRE(vn <= -a_snd || vn >= a_snd, "supersonic_state called in subsonic regime");
  return vn < 0.0 ? dirichlet : u;
}

template <int dim>
struct CharacteristicSet {
  double r1, r2, r4;             // v_n - 2a/(g-1), p/rho^gamma, v_n + 2a/(g-1)
  std::array<double, dim> vt;    // tangential velocity
  std::array<double, 4> lambda;  // v_n - a, v_n, v_n, v_n + a
};

template <int dim>
CharacteristicSet<dim> characteristic_set(const GasModel& gas, const State<dim>& u,
                                          const std::array<double, dim>& n) {
  const double rho = u[0];
  const double p = gas.pressure(u);
  const double a = gas.sound_speed(rho, p);
  double vn = 0.0;
  std::array<double, dim> v;
  for (int k = 0; k < dim; ++k) {
    v[k] = u[1 + k] / rho;
    vn += v[k] * n[k];
  }
  CharacteristicSet<dim> cs;
  cs.r1 = vn - 2.0 * a * gas.inv_gm1();
  cs.r2 = p * std::pow(rho, -gas.gamma());
  cs.r4 = vn + 2.0 * a * gas.inv_gm1();
  for (int k = 0; k < dim; ++k) cs.vt[k] = v[k] - vn * n[k];
  cs.lambda = {vn - a, vn, vn, vn + a};
  return cs;
}

// Riemann-invariant blend of the current state and the Dirichlet data: each
// invariant is taken from the Dirichlet side when its characteristic speed at
// the current state is incoming (<= 0). Fully supersonic regimes short-cut to
// plain upwinding, so the result then matches supersonic_state bit for bit.
template <int dim>
State<dim> characteristic_state(const GasModel& gas, const State<dim>& u, const State<dim>& dirichlet,
                                const std::array<double, dim>& n) {
  const auto cur = characteristic_set<dim>(gas, u, n);
  if (cur.lambda[3] <= 0.0) return dirichlet; // supersonic inflow
  if (cur.lambda[0] > 0.0) return u;          // supersonic (or all-outgoing) outflow
  const auto dir = characteristic_set<dim>(gas, dirichlet, n);

  const double r1 = cur.lambda[0] <= 0.0 ? dir.r1 : cur.r1;
  const double r2 = cur.lambda[1] <= 0.0 ? dir.r2 : cur.r2;
  const auto& vt = cur.lambda[1] <= 0.0 ? dir.vt : cur.vt;
  const double r4 = cur.r4; // lambda[3] > 0 here

  const double vn = 0.5 * (r1 + r4);
  const double a = 0.25 * gas.gm1() * (r4 - r1);
  GDG_REQUIRE(a > 0.0 && r2 > 0.0, "characteristic blend degenerate (vacuum boundary data)");
  const double rho = std::pow(a * a / (gas.gamma() * r2), gas.inv_gm1());
  const double p = r2 * std::pow(rho, gas.gamma());

  State<dim> r;
  r[0] = rho;
  double kinetic = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double vk = vt[k] + vn * n[k];
    r[1 + k] = rho * vk;
    kinetic += 0.5 * rho * vk * vk;
  }
  r[1 + dim] = p * gas.inv_gm1() + kinetic;
  return r;
}

// Per-component recipe. The data callable supplies Dirichlet states; a null
// callable makes the characteristic rule fall back to the current state (a
// "no information" outflow), matching the `do_nothing` kind when supersonic.
template <int dim>
struct BoundaryRule {
  BoundaryKind kind = BoundaryKind::do_nothing;
  std::function<State<dim>(const std::array<double, dim>&, double)> data;
};

template <int dim>
using BoundaryRules = std::vector<BoundaryRule<dim>>;

// Fills `out` (aligned with graph.b_terms) with one admissible state per
// boundary term.
template <int dim>
void boundary_states(const GasModel& gas, const DgSpace<dim>& space, const StencilGraph<dim>& g,
                     const BoundaryRules<dim>& rules, const std::vector<State<dim>>& u, double t,
                     WorkerPool& pool, std::vector<State<dim>>& out) {
  out.resize(g.b_terms.size());
  const auto n_b = static_cast<std::int64_t>(g.b_dofs.size());
  pool.loop(n_b, [&](std::int64_t bb, std::int64_t be, int) {
    for (auto bi = bb; bi < be; ++bi) {
      const int i = g.b_dofs[bi];
      for (int term = g.b_row_ptr[i]; term < g.b_row_ptr[i + 1]; ++term) {
        const auto& bt = g.b_terms[term];
        GDG_REQUIRE(bt.component < static_cast<int>(rules.size()),
                    "boundary: no rule for component " << bt.component);
        const auto& rule = rules[bt.component];
        const State<dim> dirichlet =
            rule.data ? rule.data(space.node(i), t) : u[i];
        State<dim> s;
        switch (rule.kind) {
          case BoundaryKind::dirichlet: s = dirichlet; break;
          case BoundaryKind::slip: s = slip_state<dim>(u[i], bt.normal); break;
          case BoundaryKind::supersonic: s = supersonic_state<dim>(gas, u[i], dirichlet, bt.normal); break;
          case BoundaryKind::characteristic:
            s = characteristic_state<dim>(gas, u[i], dirichlet, bt.normal);
            break;
          case BoundaryKind::do_nothing: s = u[i]; break;
        }
        GDG_REQUIRE(gas.admissible(s), "boundary: inadmissible data at dof "
                                           << i << ", component " << bt.component);
        out[term] = s;
      }
    }
  });
}

} // namespace gdg
