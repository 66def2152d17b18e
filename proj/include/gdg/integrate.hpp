// SPDX-License-Identifier: MIT
// Strong-stability-preserving time integrators expressed as convex
// combinations of forward-Euler substeps, so every invariant-set property of
// a single substep carries over to the full step. The per-substep boundary
// fluxes are folded with the same convex weights into a running ledger, which
// keeps the global conservation balance exact up to roundoff.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gdg/gas.hpp"
#include "gdg/parallel.hpp"
#include "gdg/scheme.hpp"

namespace gdg {

enum class TimeIntegrator { forward_euler, ssprk33, ssprk54 };

// SchemeT must provide prepare(u, t), cfl_dt(), and
// advance(u, dt, out) -> State<dim> boundary flux; advance may be called
// repeatedly per prepare with different dt. The default is Scheme<dim>; tests
// substitute linear stand-ins to probe the stepping itself.
template <int dim, class SchemeT = Scheme<dim>>
class Integrator {
 public:
  Integrator(SchemeT& scheme, WorkerPool& pool, TimeIntegrator kind, double cr)
      : scheme_(scheme), pool_(pool), kind_(kind), cr_(cr) {
    GDG_REQUIRE(cr > 0.0, "integrator: courant factor must be positive");
  }

  // Advances u by one step from time t, never past t_stop, with the step
  // size taken from the prepared CFL bound. Returns the step actually taken
  // (0 once t_stop is reached).
  //
  // The bound is sampled at the step start, so a sharp transient can push a
  // later stage wavespeed past it; the schemes detect that and throw before
  // touching u or the ledger. The step is then retried with half the size.
  double step(std::vector<State<dim>>& u, double t, double t_stop) {
    const double remaining = t_stop - t;
    if (!(remaining > 0.0)) return 0.0;
    scheme_.prepare(u, t);
    double dt = std::min(cr_ * scheme_.cfl_dt() / max_substep_fraction(kind_), remaining);
    for (int attempt = 0;; ++attempt) {
      try {
        take_step(u, t, dt);
        return dt;
      } catch (const std::runtime_error&) {
        if (attempt >= 7) throw;
        dt *= 0.5;
        scheme_.prepare(u, t);
      }
    }
  }

  // Accumulated boundary outflow; sum_i m_i u_i(t) + ledger is conserved.
  const State<dim>& boundary_ledger() const { return ledger_; }
  void reset_ledger() { ledger_ = State<dim>{}; }

  TimeIntegrator kind() const { return kind_; }
  double courant() const { return cr_; }

 private:
  void take_step(std::vector<State<dim>>& u, double t, double dt) {
    switch (kind_) {
      case TimeIntegrator::forward_euler: {
        ledger_ = ledger_ + scheme_.advance(u, dt, a_);
        u.swap(a_);
        return;
      }
      case TimeIntegrator::ssprk33: {
        const State<dim> bf1 = scheme_.advance(u, dt, a_);
        scheme_.prepare(a_, t + dt);
        const State<dim> bf2 = scheme_.advance(a_, dt, b_);
        combine2(0.75, u, 0.25, b_, a_);
        const State<dim> l2 = 0.25 * (bf1 + bf2);
        scheme_.prepare(a_, t + 0.5 * dt);
        const State<dim> bf3 = scheme_.advance(a_, dt, b_);
        combine2(1.0 / 3.0, u, 2.0 / 3.0, b_, u);
        ledger_ = ledger_ + (2.0 / 3.0) * (l2 + bf3);
        return;
      }
      case TimeIntegrator::ssprk54:
      default:
        step54(u, t, dt);
        return;
    }
  }

  // Spiteri/Ruuth SSP(5,4) in Shu-Osher form. Stage values are convex
  // combinations of the step input and forward-Euler substeps; r* are the
  // effective substep fractions, and the SSP step bound is cfl/max(r).
  static constexpr double b1 = 0.391752226571890;
  static constexpr double a20 = 0.444370493651235, a21 = 0.555629506348765,
                          b2 = 0.368410593050371;
  static constexpr double a30 = 0.620101851488403, a31 = 0.379898148511597,
                          b3 = 0.251891774271694;
  static constexpr double a40 = 0.178079954393132, a41 = 0.821920045606868,
                          b4 = 0.544974750228521;
  static constexpr double w2 = 0.517231671970585, w3 = 0.096059710526147,
                          b5 = 0.063692468666290;
  static constexpr double w4 = 0.386708617503269, b6 = 0.226007483236906;

  // Largest forward-Euler fraction across the substeps; the full-step CFL
  // bound is the substep bound divided by it (1 for the other schemes).
  static double max_substep_fraction(TimeIntegrator kind) {
    if (kind != TimeIntegrator::ssprk54) return 1.0;
    return std::max({b1, b2 / a21, b3 / a31, b4 / a41, b5 / w3, b6 / w4});
  }

  void step54(std::vector<State<dim>>& u, double t, double dt) {
    const double r1 = b2 / a21, r2 = b3 / a31, r3 = b4 / a41, r5 = b5 / w3, r6 = b6 / w4;
    const double c1 = b1;
    const double c2 = a21 * (c1 + r1);
    const double c3 = a31 * (c2 + r2);
    const double c4 = a41 * (c3 + r3);

    State<dim> bf = scheme_.advance(u, b1 * dt, a_); // a = v1
    State<dim> la = bf;

    scheme_.prepare(a_, t + c1 * dt);
    bf = scheme_.advance(a_, r1 * dt, b_);
    combine2(a20, u, a21, b_, b_); // b = v2
    const State<dim> lb = a21 * (la + bf);

    scheme_.prepare(b_, t + c2 * dt);
    bf = scheme_.advance(b_, r2 * dt, a_);
    combine2(a30, u, a31, a_, a_); // a = v3
    la = a31 * (lb + bf);

    scheme_.prepare(a_, t + c3 * dt);
    bf = scheme_.advance(a_, r3 * dt, c_);
    combine2(a40, u, a41, c_, c_); // c = v4
    const State<dim> lc = a41 * (la + bf);
    bf = scheme_.advance(a_, r5 * dt, d_); // d = FE(v3, r5 dt), second use of v3
    const State<dim> ld = la + bf;

    scheme_.prepare(c_, t + c4 * dt);
    bf = scheme_.advance(c_, r6 * dt, a_); // a = FE(v4, r6 dt)
    const State<dim> le = lc + bf;

    combine3(w2, b_, w3, d_, w4, a_, u);
    ledger_ = ledger_ + w2 * lb + w3 * ld + w4 * le;
  }

  void combine2(double a, const std::vector<State<dim>>& x, double b,
                const std::vector<State<dim>>& y, std::vector<State<dim>>& out) {
    out.resize(x.size());
    pool_.loop(static_cast<std::int64_t>(x.size()), [&](std::int64_t lo, std::int64_t hi, int) {
      for (auto i = lo; i < hi; ++i) {
        State<dim> v = a * x[i];
        axpy(b, y[i], v);
        out[i] = v;
      }
    });
  }

  void combine3(double a, const std::vector<State<dim>>& x, double b,
                const std::vector<State<dim>>& y, double c, const std::vector<State<dim>>& z,
                std::vector<State<dim>>& out) {
    out.resize(x.size());
    pool_.loop(static_cast<std::int64_t>(x.size()), [&](std::int64_t lo, std::int64_t hi, int) {
      for (auto i = lo; i < hi; ++i) {
        State<dim> v = a * x[i];
        axpy(b, y[i], v);
        axpy(c, z[i], v);
        out[i] = v;
      }
    });
  }

  SchemeT& scheme_;
  WorkerPool& pool_;
  TimeIntegrator kind_;
  double cr_;
  State<dim> ledger_{};
  std::vector<State<dim>> a_, b_, c_, d_;
};

} // namespace gdg
