// SPDX-License-Identifier: MIT
// Error norms against a reference solution. The consolidated norm sums the
// relative L1/L2/Linf errors of three groups: density, momentum magnitude,
// and total energy, integrated with a Gauss rule one order above the space.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "gdg/gas.hpp"
#include "gdg/parallel.hpp"
#include "gdg/space.hpp"

namespace gdg {

struct ErrorNorms {
  double l1 = 0.0, l2 = 0.0, linf = 0.0;
};

template <int dim, class Exact>
void interpolate(const DgSpace<dim>& space, Exact&& exact, double t, std::vector<State<dim>>& u) {
  u.resize(space.n_dofs());
  for (int i = 0; i < space.n_dofs(); ++i) u[i] = exact(space.node(i), t);
}

template <int dim, class Exact>
ErrorNorms solution_error(const DgSpace<dim>& space, const std::vector<State<dim>>& u,
                          Exact&& exact, double t, WorkerPool& pool) {
  const int npc = space.nodes_per_cell();
  const auto q = gauss_rule(space.degree() + 2);
  const int nq = q.size();
  int nqp = 1;
  for (int a = 0; a < dim; ++a) nqp *= nq;

  // Basis values and reference weights tabulated once per call.
  std::vector<double> tab(static_cast<std::size_t>(nqp) * npc), wq(nqp);
  std::vector<std::array<double, dim>> xi(nqp);
  for (int f = 0; f < nqp; ++f) {
    int rem = f;
    double w = 1.0;
    for (int a = 0; a < dim; ++a) {
      const int ia = rem % nq;
      rem /= nq;
      xi[f][a] = q.points[ia];
      w *= q.weights[ia];
    }
    wq[f] = w;
    for (int l = 0; l < npc; ++l) {
      const auto tpl = space.local_tuple(l);
      double v = 1.0;
      for (int a = 0; a < dim; ++a) v *= space.basis().value(tpl[a], xi[f][a]);
      tab[static_cast<std::size_t>(f) * npc + l] = v;
    }
  }

  // Partials per group: L1 num/den, L2 num/den, Linf num/den.
  struct Part {
    double n1[3] = {0, 0, 0}, d1[3] = {0, 0, 0};
    double n2[3] = {0, 0, 0}, d2[3] = {0, 0, 0};
    double ni[3] = {0, 0, 0}, di[3] = {0, 0, 0};
  };
  std::array<Part, WorkerPool::chunk_grid> parts;

  pool.loop(space.mesh().n_cells(), [&](std::int64_t cb, std::int64_t ce, int chunk) {
    Part& pt = parts[chunk];
    for (int c = static_cast<int>(cb); c < ce; ++c) {
      const auto& map = space.cell_map(c);
      for (int f = 0; f < nqp; ++f) {
        State<dim> uh{};
        for (int l = 0; l < npc; ++l)
          axpy(tab[static_cast<std::size_t>(f) * npc + l], u[space.dof(c, l)], uh);
        const State<dim> ue = exact(map.point(xi[f]), t);
        const double w = wq[f] * map.det(xi[f]);

        double err[3], ref[3];
        err[0] = std::abs(uh[0] - ue[0]);
        ref[0] = std::abs(ue[0]);
        double em = 0.0, rm = 0.0;
        for (int a = 0; a < dim; ++a) {
          em += (uh[1 + a] - ue[1 + a]) * (uh[1 + a] - ue[1 + a]);
          rm += ue[1 + a] * ue[1 + a];
        }
        err[1] = std::sqrt(em);
        ref[1] = std::sqrt(rm);
        err[2] = std::abs(uh[dim + 1] - ue[dim + 1]);
        ref[2] = std::abs(ue[dim + 1]);

        for (int gi = 0; gi < 3; ++gi) {
          pt.n1[gi] += w * err[gi];
          pt.d1[gi] += w * ref[gi];
          pt.n2[gi] += w * err[gi] * err[gi];
          pt.d2[gi] += w * ref[gi] * ref[gi];
          pt.ni[gi] = std::max(pt.ni[gi], err[gi]);
          pt.di[gi] = std::max(pt.di[gi], ref[gi]);
        }
      }
    }
  });

  Part tot;
  for (const auto& pt : parts)
    for (int gi = 0; gi < 3; ++gi) {
      tot.n1[gi] += pt.n1[gi];
      tot.d1[gi] += pt.d1[gi];
      tot.n2[gi] += pt.n2[gi];
      tot.d2[gi] += pt.d2[gi];
      tot.ni[gi] = std::max(tot.ni[gi], pt.ni[gi]);
      tot.di[gi] = std::max(tot.di[gi], pt.di[gi]);
    }

  ErrorNorms out;
  for (int gi = 0; gi < 3; ++gi) {
    out.l1 += tot.d1[gi] > 0.0 ? tot.n1[gi] / tot.d1[gi] : tot.n1[gi];
    out.l2 += tot.d2[gi] > 0.0 ? std::sqrt(tot.n2[gi] / tot.d2[gi]) : std::sqrt(tot.n2[gi]);
    out.linf += tot.di[gi] > 0.0 ? tot.ni[gi] / tot.di[gi] : tot.ni[gi];
  }
  return out;
}

} // namespace gdg
