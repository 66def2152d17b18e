// SPDX-License-Identifier: MIT
//
// Command line front end. Three subcommands:
//
//   run          advance a single case and print a summary
//   convergence  run a refinement ladder and print errors with observed rates
//   graph        assemble the sparsity graph for a case and dump it
//
// Options can also come from a key=value file via --config; explicit flags
// take precedence over file entries.
#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "gdg/graph.hpp"
#include "gdg/runner.hpp"

namespace {

gdg::SchemeKind parse_scheme(const std::string& s) {
  if (s == "low") return gdg::SchemeKind::low;
  if (s == "high") return gdg::SchemeKind::high;
  GDG_REQUIRE(s == "limited", "unknown scheme '" << s << "' (expected low, high, or limited)");
  return gdg::SchemeKind::limited;
}

gdg::TimeIntegrator parse_integrator(const std::string& s) {
  if (s == "fe") return gdg::TimeIntegrator::forward_euler;
  if (s == "ssprk33") return gdg::TimeIntegrator::ssprk33;
  GDG_REQUIRE(s == "ssprk54", "unknown integrator '" << s << "' (expected fe, ssprk33, ssprk54)");
  return gdg::TimeIntegrator::ssprk54;
}

int parse_strategy(const std::string& s) {
  if (s.size() == 1) {
    if (s[0] >= 'a' && s[0] <= 'd') return s[0] - 'a';
    if (s[0] >= '0' && s[0] <= '3') return s[0] - '0';
  }
  GDG_REQUIRE(false, "unknown boundary strategy '" << s << "' (expected a, b, c, or d)");
  return 0;
}

template <int dim>
void dump_case_graph(const gdg::RunParams& p, const gdg::Mesh<dim>& mesh) {
  gdg::WorkerPool pool(p.threads);
  gdg::DgSpace<dim> space(mesh, p.degree);
  const gdg::StencilGraph<dim> g = gdg::assemble(space, pool);
  if (p.output_dir.empty()) {
    gdg::dump_graph(g, std::cout);
    return;
  }
  std::filesystem::create_directories(p.output_dir);
  const std::string path = p.output_dir + "/graph.txt";
  std::ofstream out(path);
  GDG_REQUIRE(out.good(), "cannot open " << path << " for writing");
  gdg::dump_graph(g, out);
  std::printf("wrote %s (%d nodes, %zu directed edges)\n", path.c_str(), g.n, g.n_edges());
}

void print_summary(const gdg::RunParams& p, const gdg::RunSummary& s) {
  std::printf("%s  degree %d  level %d  dofs %d\n", p.case_name.c_str(), p.degree, p.level,
              s.dofs);
  std::printf("steps %ld  t_end %.10g  wall %.2fs\n", s.steps, s.t_end, s.wall_seconds);
  if (s.has_error)
    std::printf("L1 %.6e  L2 %.6e  Linf %.6e\n", s.error.l1, s.error.l2, s.error.linf);
  std::printf("conservation %.3e  rho in [%.6g, %.6g]  min internal energy %.6g\n",
              s.conservation, s.min_density, s.max_density, s.min_internal_energy);
  if (p.scheme == gdg::SchemeKind::limited)
    std::printf("smallest limiter factor %.6g\n", s.limiter_min);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-based discontinuous Galerkin solver for the compressible Euler equations"};
  app.require_subcommand(1);

  gdg::RunParams p;
  std::string scheme = "limited";
  std::string integrator = "ssprk33";
  std::string strategy = "a";
  int min_level = 0;
  int max_level = 3;

  const auto add_shared = [&](CLI::App* c) {
    c->add_option("--case", p.case_name, "vortex, rarefaction, leblanc, or cylinder")
        ->capture_default_str();
    c->add_option("--degree", p.degree, "polynomial degree")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    c->add_option("--scheme", scheme, "low, high, or limited")->capture_default_str();
    c->add_option("--integrator", integrator, "fe, ssprk33, or ssprk54")->capture_default_str();
    c->add_option("--cfl", p.courant, "Courant number")->capture_default_str();
    c->add_option("--gamma", p.gamma, "ratio of specific heats (case default if unset)");
    c->add_option("--tfinal", p.t_final, "final time (case default if unset)");
    c->add_option("--threads", p.threads, "worker threads")->capture_default_str();
    c->add_option("--mach", p.mach, "vortex advection Mach number")->capture_default_str();
    c->add_option("--tinf", p.t_inf, "vortex far-field temperature")->capture_default_str();
    c->add_option("--strategy", strategy, "vortex boundary treatment a, b, c, or d")
        ->capture_default_str();
    c->add_option("--tstart", p.t_start, "rarefaction start time")->capture_default_str();
    c->add_option("--rho_r", p.rho_r, "rarefaction right state density")->capture_default_str();
    c->add_option("--output", p.output_dir, "directory for artifacts");
    c->set_config("--config", "", "read options from a key=value file");
  };

  CLI::App* run = app.add_subcommand("run", "advance one case and report a summary");
  add_shared(run);
  run->add_option("--level", p.level, "refinement level")->capture_default_str();
  run->add_flag("--steps", p.write_steps, "write per-step diagnostics to <output>/steps.csv");
  run->add_flag("--snapshot", p.write_snapshot, "write the final solution (vtu in 2d, csv in 1d)");
  run->add_flag("--graph", p.write_graph, "also dump the assembled graph to <output>/graph.txt");

  CLI::App* conv = app.add_subcommand("convergence", "run a refinement ladder and print rates");
  add_shared(conv);
  conv->add_option("--min-level", min_level, "coarsest refinement level")->capture_default_str();
  conv->add_option("--max-level", max_level, "finest refinement level")->capture_default_str();

  CLI::App* graph = app.add_subcommand("graph", "assemble the sparsity graph and dump it");
  add_shared(graph);
  graph->add_option("--level", p.level, "refinement level")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    p.scheme = parse_scheme(scheme);
    p.integrator = parse_integrator(integrator);
    p.strategy = parse_strategy(strategy);

    if (app.got_subcommand(run)) {
      const gdg::RunSummary s = gdg::run_case(p);
      print_summary(p, s);
    } else if (app.got_subcommand(conv)) {
      const auto rows = gdg::convergence_study(p, min_level, max_level, true);
      if (!p.output_dir.empty()) {
        std::filesystem::create_directories(p.output_dir);
        gdg::write_convergence_csv(p.output_dir + "/convergence.csv", rows);
      }
    } else {
      if (gdg::case_dimension(p.case_name) == 1)
        dump_case_graph<1>(p, gdg::case_mesh_1d(p));
      else
        dump_case_graph<2>(p, gdg::case_mesh_2d(p));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
