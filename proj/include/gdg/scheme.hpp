// SPDX-License-Identifier: MIT
// Ties one spatial discretization together: boundary data, graph
// viscosities, and one of the three update flavors (first-order, high-order,
// or limited high-order). A step is prepare() at the stage state and time,
// then one or more advance() calls with step sizes bounded by cfl_dt().
#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "gdg/boundary.hpp"
#include "gdg/gas.hpp"
#include "gdg/graph.hpp"
#include "gdg/high_order.hpp"
#include "gdg/limiter.hpp"
#include "gdg/low_order.hpp"
#include "gdg/parallel.hpp"
#include "gdg/space.hpp"

namespace gdg {

enum class SchemeKind { low, high, limited };

template <int dim>
class Scheme {
 public:
  Scheme(const GasModel& gas, const DgSpace<dim>& space, const StencilGraph<dim>& g,
         BoundaryRules<dim> rules, SchemeKind kind, WorkerPool& pool)
      : gas_(gas),
        space_(space),
        g_(g),
        rules_(std::move(rules)),
        kind_(kind),
        pool_(pool),
        diag_(build_diagonal(g)),
        extrema_(gas) {
    if (kind_ != SchemeKind::low) {
      min_factor_ = min_viscosity_factor(space, g);
      c_ev_ = entropy_viscosity_constant(space.degree());
      mass_ = CellMassSolver<dim>(space, g, pool);
    }
    if (kind_ == SchemeKind::limited) {
      relax_.resize(g.n);
      for (int i = 0; i < g_.n; ++i) {
        const double h = std::pow(g_.m_lumped[i] / g_.volume, 1.0 / dim);
        relax_[i] = relax_scale * std::pow(h, relax_power);
      }
      extrema_.resize(g.n);
    }
  }

  // Bound relaxation: bounds are widened by a factor 1 -/+ r_i with
  // r_i = 4 h_i^1.5 and h_i the local mesh size relative to the domain.
  static constexpr double relax_scale = 4.0;
  static constexpr double relax_power = 1.5;

  void prepare(const std::vector<State<dim>>& u, double t) {
    boundary_states(gas_, space_, g_, rules_, u, t, pool_, bstate_);
    build_node_cache<dim>(gas_, u, kind_ != SchemeKind::low, pool_, cache_);
    compute_low_viscosity(gas_, g_, diag_, u, cache_, bstate_, pool_, visc_);
    cfl_dt_ = cfl_time_step(g_, diag_, visc_, pool_);
  }

  // Largest admissibility-preserving forward-Euler step at the prepared state.
  double cfl_dt() const { return cfl_dt_; }

  // One forward-Euler substep of size dt from the prepared state; dt must not
  // exceed cfl_dt() for the first-order and limited flavors. Returns the
  // boundary flux for the conservation ledger. May be called more than once
  // per prepare() with different dt.
  State<dim> advance(const std::vector<State<dim>>& u, double dt, std::vector<State<dim>>& out) {
    switch (kind_) {
      case SchemeKind::low:
        return low_order_update(gas_, g_, diag_, u, cache_, bstate_, visc_, dt, pool_, out);
      case SchemeKind::high: {
        entropy_indicator(gas_, g_, u, cache_, pool_, ind_);
        compute_high_viscosity(g_, diag_, visc_, min_factor_, ind_, c_ev_, pool_, visc_high_);
        return high_order_update(gas_, g_, u, cache_, bstate_, visc_high_, mass_, dt, pool_,
                                 scratch_, out);
      }
      case SchemeKind::limited:
      default: {
        const State<dim> bflux = low_order_update(gas_, g_, diag_, u, cache_, bstate_, visc_, dt,
                                                  pool_, u_low_, &extrema_);
        build_bounds(gas_, g_, extrema_, relax_, pool_, bounds_);
        entropy_indicator(gas_, g_, u, cache_, pool_, ind_);
        compute_high_viscosity(g_, diag_, visc_, min_factor_, ind_, c_ev_, pool_, visc_high_);
        high_order_update(gas_, g_, u, cache_, bstate_, visc_high_, mass_, dt, pool_, scratch_,
                          u_high_);
        l_min_ = limited_update(gas_, g_, bounds_, u, u_low_, u_high_, visc_, visc_high_, dt,
                                pool_, cand_, cand2_, mid_, out);
        return bflux;
      }
    }
  }

  const GasModel& gas() const { return gas_; }
  const DgSpace<dim>& space() const { return space_; }
  const StencilGraph<dim>& graph() const { return g_; }
  SchemeKind kind() const { return kind_; }
  WorkerPool& pool() const { return pool_; }

  const std::vector<int>& diagonal() const { return diag_; }
  const NodeCache& node_cache() const { return cache_; }
  const std::vector<State<dim>>& boundary_values() const { return bstate_; }
  const GraphViscosity& low_viscosity() const { return visc_; }
  const GraphViscosity& high_viscosity() const { return visc_high_; }
  const std::vector<double>& indicator() const { return ind_; }
  const LimiterBounds& bounds() const { return bounds_; }
  const std::vector<State<dim>>& low_solution() const { return u_low_; }
  const std::vector<State<dim>>& high_solution() const { return u_high_; }
  const std::vector<double>& relaxation() const { return relax_; }
  double last_limiter_min() const { return l_min_; }

 private:
  const GasModel& gas_;
  const DgSpace<dim>& space_;
  const StencilGraph<dim>& g_;
  BoundaryRules<dim> rules_;
  SchemeKind kind_;
  WorkerPool& pool_;

  std::vector<int> diag_;
  std::vector<double> min_factor_, relax_;
  double c_ev_ = 1.0;
  CellMassSolver<dim> mass_;

  std::vector<State<dim>> bstate_;
  NodeCache cache_;
  GraphViscosity visc_, visc_high_;
  double cfl_dt_ = 0.0;

  RowExtrema<dim> extrema_;
  LimiterBounds bounds_;
  std::vector<double> ind_, cand_, cand2_;
  std::vector<State<dim>> u_low_, u_high_, mid_, scratch_;
  double l_min_ = 1.0;
};

} // namespace gdg
