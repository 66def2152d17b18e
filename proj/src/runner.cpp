// SPDX-License-Identifier: MIT
#include "gdg/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>

#include "gdg/cases.hpp"
#include "gdg/graph.hpp"
#include "gdg/vtk.hpp"

namespace gdg {

namespace {

template <int dim>
using Field = std::function<State<dim>(const std::array<double, dim>&, double)>;

template <int dim>
double conservation_residual(const State<dim>& sum0, const State<dim>& sum_now,
                             const State<dim>& ledger) {
  double num = 0.0, den = 0.0;
  for (int k = 0; k < dim + 2; ++k) {
    num = std::max(num, std::abs(sum_now[k] + ledger[k] - sum0[k]));
    den = std::max(den, std::abs(sum0[k]));
  }
  return num / den;
}

template <int dim>
void write_snapshot(const std::string& dir, const DgSpace<dim>& space,
                    const std::vector<State<dim>>& u, const GasModel& gas) {
  if constexpr (dim == 2)
    write_vtu(dir + "/solution.vtu", space, u, gas);
  else
    write_profile_csv(dir + "/solution.csv", space, u, gas);
}

template <int dim>
RunSummary run_impl(const RunParams& p, const GasModel& gas, const Mesh<dim>& mesh,
                    BoundaryRules<dim> rules, const Field<dim>& init, const Field<dim>& exact,
                    double t0, double tf) {
  WorkerPool pool(p.threads);
  DgSpace<dim> space(mesh, p.degree);
  const StencilGraph<dim> g = assemble(space, pool);
  Scheme<dim> scheme(gas, space, g, std::move(rules), p.scheme, pool);
  Integrator<dim> integ(scheme, pool, p.integrator, p.courant);

  const bool artifacts = !p.output_dir.empty();
  if (artifacts) std::filesystem::create_directories(p.output_dir);
  std::ofstream steps_csv;
  if (artifacts && p.write_steps) {
    steps_csv.open(p.output_dir + "/steps.csv");
    steps_csv << std::setprecision(12) << "step,t,dt,min_rho,min_eps,conservation\n";
  }
  if (artifacts && p.write_graph) {
    std::ofstream gout(p.output_dir + "/graph.txt");
    dump_graph(g, gout);
  }

  std::vector<State<dim>> u;
  interpolate(space, init, t0, u);
  const State<dim> sum0 = mass_weighted_sum(g, u, pool);

  RunSummary s;
  s.dofs = space.n_dofs();

  const auto wall0 = std::chrono::steady_clock::now();
  double t = t0;
  while (true) {
    const double dt = integ.step(u, t, tf);
    if (!(dt > 0.0)) break;
    t += dt;
    ++s.steps;
    if (p.scheme == SchemeKind::limited)
      s.limiter_min = std::min(s.limiter_min, scheme.last_limiter_min());
    if (steps_csv.is_open()) {
      double rmin = u[0][0], emin = GasModel::internal_energy(u[0]);
      for (const auto& v : u) {
        rmin = std::min(rmin, v[0]);
        emin = std::min(emin, GasModel::internal_energy(v));
      }
      const State<dim> now = mass_weighted_sum(g, u, pool);
      steps_csv << s.steps << "," << t << "," << dt << "," << rmin << "," << emin << ","
                << conservation_residual<dim>(sum0, now, integ.boundary_ledger()) << "\n";
    }
    GDG_REQUIRE(s.steps < 100000000L, "run: step limit reached at t = " << t);
  }
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  s.t_end = t;

  if (exact) {
    s.error = solution_error(space, u, exact, t, pool);
    s.has_error = true;
  }
  const State<dim> sum_now = mass_weighted_sum(g, u, pool);
  s.conservation = conservation_residual<dim>(sum0, sum_now, integ.boundary_ledger());
  s.min_density = u[0][0];
  s.min_internal_energy = GasModel::internal_energy(u[0]);
  s.max_density = u[0][0];
  for (const auto& v : u) {
    s.min_density = std::min(s.min_density, v[0]);
    s.min_internal_energy = std::min(s.min_internal_energy, GasModel::internal_energy(v));
    s.max_density = std::max(s.max_density, v[0]);
  }

  if (artifacts && p.write_snapshot) write_snapshot(p.output_dir, space, u, gas);
  return s;
}

} // namespace

Mesh<1> case_mesh_1d(const RunParams& p) {
  GDG_REQUIRE(case_dimension(p.case_name) == 1, "case '" << p.case_name << "' is not 1d");
  const int base = p.degree == 1 ? 60 : p.degree == 2 ? 40 : 30;
  return interval_mesh(0.0, 1.0, base << p.level);
}

Mesh<2> case_mesh_2d(const RunParams& p) {
  GDG_REQUIRE(case_dimension(p.case_name) == 2, "case '" << p.case_name << "' is not 2d");
  if (p.case_name == "vortex") {
    const int base = p.degree == 1 ? 24 : p.degree == 2 ? 16 : 12;
    const int n = base << p.level;
    return box_mesh({-5.0, -5.0}, {5.0, 5.0}, n, n);
  }
  Mesh<2> mesh = cylinder_channel_mesh();
  for (int r = 0; r < p.level; ++r) mesh = refine(mesh);
  return mesh;
}

int case_dimension(const std::string& case_name) {
  if (case_name == "rarefaction" || case_name == "leblanc") return 1;
  GDG_REQUIRE(case_name == "vortex" || case_name == "cylinder",
              "unknown case '" << case_name << "'");
  return 2;
}

double default_final_time(const RunParams& p) {
  if (p.case_name == "vortex") return 2.0;
  if (p.case_name == "rarefaction") return 0.4; // measured from t_start
  if (p.case_name == "leblanc") return 2.0 / 3.0;
  return 4.0; // cylinder
}

RunSummary run_case(const RunParams& p) {
  GDG_REQUIRE(p.degree >= 1 && p.degree <= 3, "run: degree must be 1, 2, or 3");
  GDG_REQUIRE(p.level >= 0, "run: level must be nonnegative");
  const double tf_param = p.t_final > 0.0 ? p.t_final : default_final_time(p);

  if (p.case_name == "vortex") {
    VortexCase vc = make_vortex(p.mach, p.t_inf);
    if (p.gamma > 0.0) vc.gas = GasModel(p.gamma);
    const Mesh<2> mesh = case_mesh_2d(p);
    GDG_REQUIRE(p.strategy >= 0 && p.strategy <= 3, "run: strategy must be 0..3");
    auto rules = vortex_rules(vc, static_cast<VortexBoundary>(p.strategy));
    return run_impl<2>(p, vc.gas, mesh, std::move(rules), vc, vc, 0.0, tf_param);
  }

  if (p.case_name == "rarefaction" || p.case_name == "leblanc") {
    const bool rare = p.case_name == "rarefaction";
    const FanCase fc = rare ? rarefaction_case(p.rho_r) : leblanc_case();
    const Mesh<1> mesh = case_mesh_1d(p);
    const double t0 = rare ? p.t_start : 0.0;
    return run_impl<1>(p, fc.gas, mesh, fan_rules(fc), fc, fc, t0, t0 + tf_param);
  }

  if (p.case_name == "cylinder") {
    const ChannelCase cc = mach3_channel();
    const Mesh<2> mesh = case_mesh_2d(p);
    const State<2> fs = cc.free_stream;
    const Field<2> init = [fs](const std::array<double, 2>&, double) { return fs; };
    return run_impl<2>(p, cc.gas, mesh, channel_rules(cc), init, nullptr, 0.0, tf_param);
  }

  GDG_REQUIRE(false, "unknown case '" << p.case_name << "'");
  return {};
}

std::vector<ConvergenceRow> convergence_study(RunParams p, int level_min, int level_max,
                                              bool print) {
  GDG_REQUIRE(level_min >= 0 && level_max >= level_min, "convergence: bad level range");
  std::vector<ConvergenceRow> rows;
  for (int level = level_min; level <= level_max; ++level) {
    p.level = level;
    const RunSummary s = run_case(p);
    GDG_REQUIRE(s.has_error, "convergence: case '" << p.case_name << "' has no exact solution");
    ConvergenceRow row;
    row.level = level;
    row.dofs = s.dofs;
    row.error = s.error;
    row.wall_seconds = s.wall_seconds;
    if (!rows.empty()) {
      const auto& prev = rows.back();
      row.rate1 = std::log2(prev.error.l1 / row.error.l1);
      row.rate2 = std::log2(prev.error.l2 / row.error.l2);
      row.rate_inf = std::log2(prev.error.linf / row.error.linf);
    }
    rows.push_back(row);
    if (print) {
      std::printf("level %d  dofs %8d  L1 %.6e (%.2f)  L2 %.6e (%.2f)  Linf %.6e (%.2f)  [%.1fs]\n",
                  row.level, row.dofs, row.error.l1, row.rate1, row.error.l2, row.rate2,
                  row.error.linf, row.rate_inf, row.wall_seconds);
      std::fflush(stdout);
    }
  }
  return rows;
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
  std::ofstream out(path);
  GDG_REQUIRE(out.good(), "convergence: cannot open " << path << " for writing");
  out << std::setprecision(12) << "level,dofs,l1,rate1,l2,rate2,linf,rateinf\n";
  for (const auto& r : rows)
    out << r.level << "," << r.dofs << "," << r.error.l1 << "," << r.rate1 << "," << r.error.l2
        << "," << r.rate2 << "," << r.error.linf << "," << r.rate_inf << "\n";
}

} // namespace gdg
