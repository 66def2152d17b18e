// SPDX-License-Identifier: MIT
// Assembles and runs the benchmark cases end to end: mesh ladder, space,
// graph, scheme, integrator, error norms, and optional artifacts
// (convergence and step CSVs, snapshots, graph dumps).
#pragma once

#include <string>
#include <vector>

#include "gdg/integrate.hpp"
#include "gdg/norms.hpp"
#include "gdg/scheme.hpp"

namespace gdg {

struct RunParams {
  std::string case_name = "vortex"; // vortex | rarefaction | leblanc | cylinder
  int degree = 1;
  int level = 0;
  SchemeKind scheme = SchemeKind::limited;
  TimeIntegrator integrator = TimeIntegrator::ssprk33;
  double courant = 0.5;
  int threads = 1;
  double gamma = -1.0;   // < 0: case default
  double t_final = -1.0; // < 0: case default

  // vortex
  double mach = 1.0;
  double t_inf = 1.0 / 1.4;
  int strategy = 0; // 0 exact Dirichlet, 1/2/3 characteristic with exact/far-field/no data

  // rarefaction
  double t_start = 0.2;
  double rho_r = 0.5;

  std::string output_dir; // empty: no artifacts
  bool write_steps = false;
  bool write_snapshot = false;
  bool write_graph = false;
};

struct RunSummary {
  int dofs = 0;
  long steps = 0;
  bool has_error = false;
  ErrorNorms error{};
  double t_end = 0.0;
  double conservation = 0.0; // relative mass/momentum/energy balance residual
  double min_density = 0.0;
  double min_internal_energy = 0.0;
  double max_density = 0.0;
  double limiter_min = 1.0;
  double wall_seconds = 0.0;
};

RunSummary run_case(const RunParams& p);

int case_dimension(const std::string& case_name);
double default_final_time(const RunParams& p);

// Mesh ladders used by the cases (base resolution depends on the degree so
// the dof counts line up across degrees).
Mesh<1> case_mesh_1d(const RunParams& p);
Mesh<2> case_mesh_2d(const RunParams& p);

struct ConvergenceRow {
  int level = 0;
  int dofs = 0;
  ErrorNorms error{};
  double rate1 = 0.0, rate2 = 0.0, rate_inf = 0.0;
  double wall_seconds = 0.0;
};

// Runs levels level_min..level_max of the configured case; rates are per
// refinement (mesh factor 2).
std::vector<ConvergenceRow> convergence_study(RunParams p, int level_min, int level_max,
                                              bool print = false);

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows);

} // namespace gdg
