// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ndfem/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ndfem - convergence and stability harness for the C0 and IP-DG\n"
               "finite element methods for -A:D^2 u = f in non-divergence form"};

  std::string config_path;
  std::string problem, method, format, levels;
  std::string dump_mesh, dump_matrix, dump_solution, out;
  int degree = -1, epsilon = -2;
  double gamma0 = -1.0, beta = -1.0;
  bool probe = false;
  long long seed = -1;

  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--problem", problem, "manufactured problem name");
  app.add_option("--degree", degree, "polynomial degree r (1, 2 or 3)");
  app.add_option("--method", method, "c0 or dg");
  app.add_option("--epsilon", epsilon, "DG symmetry parameter (1, 0 or -1)");
  app.add_option("--gamma0", gamma0, "DG penalty scale (gamma_e = gamma0 r^2)");
  app.add_option("--levels", levels, "comma-separated cells-per-side list, e.g. 8,16,32,64");
  app.add_option("--out", out, "report path (default: stdout)");
  app.add_option("--format", format, "csv or json");
  app.add_flag("--probe", probe, "run the stability probe per level");
  app.add_option("--seed", seed, "seed for randomized probe start vectors");
  app.add_option("--beta", beta, "exponent of the reduced-regularity solution");
  app.add_option("--dump-mesh", dump_mesh, "write the finest mesh as plain text");
  app.add_option("--dump-matrix", dump_matrix, "write the finest system matrix (i j value)");
  app.add_option("--dump-solution", dump_solution, "write finest nodal values (x y value)");

  CLI11_PARSE(app, argc, argv);

  try {
    ndfem::RunConfig cfg;
    if (!config_path.empty()) cfg = ndfem::parse_config_file(config_path);
    if (!problem.empty()) cfg.problem = problem;
    if (degree >= 0) cfg.degree = degree;
    if (!method.empty()) ndfem::apply_config_entry(cfg, "method", method);
    if (epsilon != -2) cfg.epsilon = epsilon;
    if (gamma0 >= 0.0) cfg.gamma0 = gamma0;
    if (!levels.empty()) ndfem::apply_config_entry(cfg, "levels", levels);
    if (!out.empty()) cfg.out = out;
    if (!format.empty()) ndfem::apply_config_entry(cfg, "format", format);
    if (probe) cfg.probe = true;
    if (seed >= 0) cfg.seed = static_cast<uint64_t>(seed);
    if (beta >= 0.0) cfg.beta = beta;
    if (!dump_mesh.empty()) cfg.dump_mesh = dump_mesh;
    if (!dump_matrix.empty()) cfg.dump_matrix = dump_matrix;
    if (!dump_solution.empty()) cfg.dump_solution = dump_solution;

    const ndfem::ConvergenceReport report = ndfem::run(cfg);

    if (cfg.out.empty()) {
      if (cfg.format == ndfem::OutputFormat::csv)
        ndfem::write_csv(report, std::cout);
      else
        ndfem::write_json(report, std::cout);
    } else {
      std::ofstream os(cfg.out);
      if (!os) {
        std::cerr << "error: cannot open " << cfg.out << "\n";
        return 3;
      }
      if (cfg.format == ndfem::OutputFormat::csv)
        ndfem::write_csv(report, os);
      else
        ndfem::write_json(report, os);
    }

    const int code = ndfem::exit_code(report);
    std::cerr << "verdicts: h1_rate=" << (report.verdicts.h1_rate_ok ? "ok" : "FAIL")
              << " h2_rate=" << (report.verdicts.h2_rate_ok ? "ok" : "FAIL")
              << " residual=" << (report.verdicts.residual_ok ? "ok" : "FAIL")
              << " levels=" << (report.verdicts.no_failures ? "ok" : "FAIL")
              << " (exit " << code << ")\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
