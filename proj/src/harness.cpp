// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include "ndfem/harness.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace ndfem {

namespace {

constexpr double kExactThreshold = 1e-14;

std::optional<EocValue> eoc_pair(double e0, double e1, double h0, double h1) {
  if (!(std::isfinite(e0) && std::isfinite(e1))) return std::nullopt;
  if (e0 <= kExactThreshold || e1 <= kExactThreshold) return EocValue{0.0, true};
  return EocValue{std::log(e0 / e1) / std::log(h0 / h1), false};
}

std::string fmt(double v, const char* format = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string fmt_eoc(const std::optional<EocValue>& e) {
  if (!e.has_value()) return "";
  if (e->exact) return "exact";
  return fmt(e->value, "%.6f");
}

std::string method_name(Method m) { return m == Method::c0 ? "c0" : "dg"; }

void dump_matrix_file(const SpMat& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "% " << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
  os.precision(17);
  for (int i = 0; i < m.outerSize(); ++i)
    for (SpMat::InnerIterator it(m, i); it; ++it)
      os << it.row() << " " << it.col() << " " << it.value() << "\n";
}

LevelRow run_level(const RunConfig& cfg, const ManufacturedProblem& problem, int n,
                   bool is_finest) {
  LevelRow row;
  row.n = n;
  const auto t0 = std::chrono::steady_clock::now();
  std::string stage = "mesh";
  try {
    const Mesh mesh = Mesh::unit_square(n);
    row.h = mesh.h_max();
    if (is_finest && cfg.dump_mesh) {
      std::ofstream os(*cfg.dump_mesh);
      if (!os) throw std::runtime_error("cannot open " + *cfg.dump_mesh);
      write_mesh(mesh, os);
    }

    if (cfg.method == Method::c0) {
      stage = "space";
      const FESpace space(mesh, cfg.degree);
      row.dofs = space.n_free();
      stage = "solve";
      const SolveResult sol = solve(problem, space);
      stage = "norms";
      const ErrorTriple err = error_norms(problem, sol.solution);
      row.l2 = err.l2;
      row.h1 = err.h1;
      row.h2_broken = err.h2_broken;
      row.residual = galerkin_residual(problem, sol);
      if (cfg.probe) {
        stage = "probe";
        ProbeOptions popts;
        popts.seed = cfg.seed + 12345;
        row.probe = stability_probe(space, problem.coefficient, popts);
      }
      if (is_finest && cfg.dump_matrix) dump_matrix_file(sol.op.matrix, *cfg.dump_matrix);
      if (is_finest && cfg.dump_solution) {
        std::ofstream os(*cfg.dump_solution);
        if (!os) throw std::runtime_error("cannot open " + *cfg.dump_solution);
        os.precision(17);
        for (int d = 0; d < space.n_dofs(); ++d) {
          const Vec2 p = space.dof_point(d);
          os << p.x << " " << p.y << " " << sol.solution.coeffs()[d] << "\n";
        }
      }
    } else {
      stage = "solve";
      DGConfig dgc;
      dgc.epsilon = cfg.epsilon.value_or(1);
      dgc.gamma0 = cfg.gamma0.value_or(10.0);
      const DGSolveResult sol = solve_dg(problem, mesh, cfg.degree, dgc);
      row.dofs = sol.solution.space().n_dofs();
      stage = "norms";
      const DGError err = dg_error_norms(problem, sol.solution);
      row.l2 = err.l2;
      row.h1 = err.h1_broken;
      row.h2_broken = std::numeric_limits<double>::quiet_NaN();
      row.residual = sol.residual_norm;
      if (is_finest && cfg.dump_matrix) dump_matrix_file(sol.op.matrix, *cfg.dump_matrix);
      if (is_finest && cfg.dump_solution) {
        std::ofstream os(*cfg.dump_solution);
        if (!os) throw std::runtime_error("cannot open " + *cfg.dump_solution);
        os.precision(17);
        const DGSpace& sp = sol.solution.space();
        for (int d = 0; d < sp.n_dofs(); ++d) {
          const Vec2 p = sp.dof_point(d);
          os << p.x << " " << p.y << " " << sol.solution.coeffs()[d] << "\n";
        }
      }
    }
  } catch (const std::exception& e) {
    row.error_stage = stage + ": " + e.what();
  }
  row.time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

}  // namespace

std::vector<EocValue> eoc(std::span<const double> errors, std::span<const double> hs) {
  if (errors.size() != hs.size() || errors.size() < 2)
    throw std::invalid_argument("eoc: need equally long lists with at least two entries");
  for (const double h : hs)
    if (!(h > 0.0)) throw std::invalid_argument("eoc: mesh sizes must be positive");
  for (const double e : errors)
    if (e < 0.0 || !std::isfinite(e)) throw std::invalid_argument("eoc: errors must be finite and nonnegative");
  std::vector<EocValue> out;
  for (size_t k = 0; k + 1 < errors.size(); ++k)
    out.push_back(*eoc_pair(errors[k], errors[k + 1], hs[k], hs[k + 1]));
  return out;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.degree < 1 || cfg.degree > 3)
    throw std::invalid_argument("config: degree must be 1, 2 or 3");
  if (cfg.levels.empty()) throw std::invalid_argument("config: empty level list");
  for (size_t k = 0; k + 1 < cfg.levels.size(); ++k)
    if (cfg.levels[k] >= cfg.levels[k + 1])
      throw std::invalid_argument("config: levels must be strictly increasing");
  for (int n : cfg.levels)
    if (n < 1) throw std::invalid_argument("config: levels must be positive");
  if (cfg.method == Method::c0 && (cfg.epsilon.has_value() || cfg.gamma0.has_value()))
    throw std::invalid_argument("config: epsilon/gamma0 are DG-only fields");
  if (cfg.method == Method::dg && cfg.probe)
    throw std::invalid_argument("config: the stability probe requires method=c0");
}

ConvergenceReport run(const RunConfig& cfg) {
  validate_config(cfg);
  const ManufacturedProblem problem = problem_by_name(cfg.problem, cfg.beta);

  ConvergenceReport rep;
  rep.config = cfg;
  const double l = std::min(static_cast<double>(cfg.degree + 1), problem.regularity_s);
  rep.approximation_exponent = l;
  rep.expected_h1_order = l - 1.0;
  rep.expected_h2_order = l - 2.0;

  const size_t n_levels = cfg.levels.size();
  rep.rows.resize(n_levels);
  const unsigned pool = std::min<unsigned>(
      {2u, std::max(1u, std::thread::hardware_concurrency()), static_cast<unsigned>(n_levels)});
  std::atomic<size_t> next{0};
  auto work = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= n_levels) break;
      rep.rows[i] = run_level(cfg, problem, cfg.levels[i], i + 1 == n_levels);
    }
  };
  if (pool <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < pool; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }

  for (size_t i = 1; i < n_levels; ++i) {
    const LevelRow& prev = rep.rows[i - 1];
    LevelRow& cur = rep.rows[i];
    if (!prev.ok() || !cur.ok()) continue;
    cur.eoc_l2 = eoc_pair(prev.l2, cur.l2, prev.h, cur.h);
    cur.eoc_h1 = eoc_pair(prev.h1, cur.h1, prev.h, cur.h);
    if (cfg.method == Method::c0)
      cur.eoc_h2 = eoc_pair(prev.h2_broken, cur.h2_broken, prev.h, cur.h);
  }

  rep.verdicts = evaluate_verdicts(rep);
  return rep;
}

Verdicts evaluate_verdicts(const ConvergenceReport& rep) {
  Verdicts v;
  for (const LevelRow& row : rep.rows) {
    if (!row.ok()) v.no_failures = false;
    if (row.ok() && !(row.residual <= 1e-10)) v.residual_ok = false;
  }
  // rate checks on the finest consecutive pair of successful levels
  const LevelRow* finest = nullptr;
  for (size_t i = rep.rows.size(); i-- > 1;) {
    if (rep.rows[i].ok() && rep.rows[i - 1].ok()) {
      finest = &rep.rows[i];
      break;
    }
  }
  if (finest && finest->eoc_h1.has_value()) {
    v.has_h1_check = true;
    const double lo = rep.expected_h1_order - 0.2;
    const double hi = rep.expected_h1_order + 0.3;
    if (!finest->eoc_h1->exact)
      v.h1_rate_ok = finest->eoc_h1->value >= lo && finest->eoc_h1->value <= hi;
  }
  if (finest && rep.config.method == Method::c0 && rep.config.degree >= 2 &&
      finest->eoc_h2.has_value()) {
    v.has_h2_check = true;
    const double lo = rep.expected_h2_order - 0.2;
    const double hi = rep.expected_h2_order + 0.3;
    if (!finest->eoc_h2->exact)
      v.h2_rate_ok = finest->eoc_h2->value >= lo && finest->eoc_h2->value <= hi;
  }
  return v;
}

void write_csv(const ConvergenceReport& rep, std::ostream& os) {
  const RunConfig& cfg = rep.config;
  os << "# ndfem convergence report\n";
  os << "# problem=" << cfg.problem << " degree=" << cfg.degree
     << " method=" << method_name(cfg.method);
  if (cfg.method == Method::dg)
    os << " epsilon=" << cfg.epsilon.value_or(1) << " gamma0=" << fmt(cfg.gamma0.value_or(10.0), "%g");
  os << " probe=" << (cfg.probe ? 1 : 0) << " seed=" << cfg.seed << "\n";
  os << "# expected EOC: h1=" << fmt(rep.expected_h1_order, "%g")
     << " (interpolation exponent min{r+1,s}-1; space approximation exponent min{r+1,s}="
     << fmt(rep.approximation_exponent, "%g") << "), h2_broken=" << fmt(rep.expected_h2_order, "%g")
     << "\n";
  os << "n,h,dofs,l2,h1,h2_broken,eoc_l2,eoc_h1,eoc_h2,sigma_h1,sigma_h2,time_ms\n";
  for (const LevelRow& r : rep.rows) {
    os << r.n << "," << fmt(r.h) << "," << r.dofs << ",";
    if (r.ok()) {
      os << fmt(r.l2) << "," << fmt(r.h1) << ","
         << (std::isnan(r.h2_broken) ? "" : fmt(r.h2_broken)) << ",";
      os << fmt_eoc(r.eoc_l2) << "," << fmt_eoc(r.eoc_h1) << "," << fmt_eoc(r.eoc_h2) << ",";
      if (r.probe.has_value())
        os << fmt(r.probe->sigma_h1, "%.12g") << "," << fmt(r.probe->sigma_h2, "%.12g") << ",";
      else
        os << ",,";
    } else {
      os << ",,,,,,,,";
    }
    os << fmt(r.time_ms, "%.3f") << "\n";
  }
}

void write_json(const ConvergenceReport& rep, std::ostream& os) {
  using nlohmann::json;
  const RunConfig& cfg = rep.config;
  json j;
  j["config"] = {
      {"problem", cfg.problem},
      {"degree", cfg.degree},
      {"method", method_name(cfg.method)},
      {"epsilon", cfg.epsilon.has_value() ? json(*cfg.epsilon) : json()},
      {"gamma0", cfg.gamma0.has_value() ? json(*cfg.gamma0) : json()},
      {"levels", cfg.levels},
      {"format", cfg.format == OutputFormat::csv ? "csv" : "json"},
      {"probe", cfg.probe},
      {"seed", cfg.seed},
      {"beta", cfg.beta},
  };
  j["expected_orders"] = {
      {"h1", rep.expected_h1_order},
      {"h1_approximation_exponent", rep.approximation_exponent},
      {"h2_broken", rep.expected_h2_order},
  };
  auto eoc_json = [](const std::optional<EocValue>& e) -> json {
    if (!e.has_value()) return nullptr;
    if (e->exact) return "exact";
    return e->value;
  };
  j["rows"] = json::array();
  for (const LevelRow& r : rep.rows) {
    json row = {
        {"n", r.n},         {"h", r.h},
        {"dofs", r.dofs},   {"time_ms", r.time_ms},
        {"error", r.ok() ? json() : json(r.error_stage)},
    };
    if (r.ok()) {
      row["l2"] = r.l2;
      row["h1"] = r.h1;
      row["h2_broken"] = std::isnan(r.h2_broken) ? json() : json(r.h2_broken);
      row["eoc_l2"] = eoc_json(r.eoc_l2);
      row["eoc_h1"] = eoc_json(r.eoc_h1);
      row["eoc_h2"] = eoc_json(r.eoc_h2);
      row["residual"] = r.residual;
      if (r.probe.has_value()) {
        row["sigma_h1"] = r.probe->sigma_h1;
        row["sigma_h2"] = r.probe->sigma_h2;
        row["sigma_adjoint"] = r.probe->sigma_adjoint;
        row["invertible"] = r.probe->invertible;
        row["probe_converged"] = r.probe->converged;
      }
    }
    j["rows"].push_back(row);
  }
  j["verdicts"] = {
      {"h1_rate_ok", rep.verdicts.h1_rate_ok},   {"h2_rate_ok", rep.verdicts.h2_rate_ok},
      {"residual_ok", rep.verdicts.residual_ok}, {"no_failures", rep.verdicts.no_failures},
      {"pass", rep.verdicts.pass()},
  };
  j["exit_code"] = exit_code(rep);
  os << j.dump(2) << "\n";
}

int exit_code(const ConvergenceReport& rep) {
  if (!rep.verdicts.no_failures) return 3;
  if (!rep.verdicts.pass()) return 2;
  return 0;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<int> parse_levels(const std::string& value) {
  std::vector<int> levels;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    size_t pos = 0;
    const int n = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("config: malformed level '" + item + "'");
    levels.push_back(n);
  }
  if (levels.empty()) throw std::invalid_argument("config: empty level list");
  return levels;
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "problem") {
    cfg.problem = value;
  } else if (key == "degree") {
    cfg.degree = std::stoi(value);
  } else if (key == "method") {
    if (value == "c0")
      cfg.method = Method::c0;
    else if (value == "dg")
      cfg.method = Method::dg;
    else
      throw std::invalid_argument("config: method must be c0 or dg");
  } else if (key == "epsilon") {
    cfg.epsilon = std::stoi(value);
  } else if (key == "gamma0") {
    cfg.gamma0 = std::stod(value);
  } else if (key == "levels") {
    cfg.levels = parse_levels(value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    if (value == "csv")
      cfg.format = OutputFormat::csv;
    else if (value == "json")
      cfg.format = OutputFormat::json;
    else
      throw std::invalid_argument("config: format must be csv or json");
  } else if (key == "probe") {
    cfg.probe = (value == "1" || value == "true" || value == "yes");
  } else if (key == "seed") {
    cfg.seed = std::stoull(value);
  } else if (key == "beta") {
    cfg.beta = std::stod(value);
  } else if (key == "dump_mesh") {
    cfg.dump_mesh = value;
  } else if (key == "dump_matrix") {
    cfg.dump_matrix = value;
  } else if (key == "dump_solution") {
    cfg.dump_solution = value;
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not key=value");
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace ndfem
