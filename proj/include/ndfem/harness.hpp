// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ndfem/solver_probe.hpp"

namespace ndfem {

enum class Method { c0, dg };
enum class OutputFormat { csv, json };

struct RunConfig {
  std::string problem = "identity-sin";
  int degree = 2;
  Method method = Method::c0;
  std::optional<int> epsilon;     // dg only
  std::optional<double> gamma0;   // dg only
  std::vector<int> levels = {8, 16, 32, 64};
  std::string out;                // empty: write to stdout
  OutputFormat format = OutputFormat::csv;
  bool probe = false;
  uint64_t seed = 0;
  double beta = 0.75;             // reduced-regularity exponent
  std::optional<std::string> dump_mesh;
  std::optional<std::string> dump_matrix;
  std::optional<std::string> dump_solution;
};

/// Observed order between consecutive levels; exact marks pairs where an
/// error vanished to machine precision.
struct EocValue {
  double value = 0.0;
  bool exact = false;
};

/// Elementwise log-ratio orders log(e_k/e_{k+1}) / log(h_k/h_{k+1}).
std::vector<EocValue> eoc(std::span<const double> errors, std::span<const double> hs);

struct LevelRow {
  int n = 0;
  double h = 0.0;
  int dofs = 0;
  double l2 = 0.0;
  double h1 = 0.0;
  double h2_broken = 0.0;  // NaN for the dg method
  std::optional<EocValue> eoc_l2, eoc_h1, eoc_h2;
  std::optional<StabilityReport> probe;
  double residual = 0.0;
  double time_ms = 0.0;
  std::string error_stage;  // nonempty if this level failed

  bool ok() const { return error_stage.empty(); }
};

struct Verdicts {
  bool has_h1_check = false;
  bool has_h2_check = false;
  bool h1_rate_ok = true;
  bool h2_rate_ok = true;
  bool residual_ok = true;
  bool no_failures = true;

  bool pass() const { return h1_rate_ok && h2_rate_ok && residual_ok && no_failures; }
};

struct ConvergenceReport {
  RunConfig config;
  double expected_h1_order = 0.0;  // min{r+1, s} - 1
  double approximation_exponent = 0.0;   // min{r+1, s}: approximation power of the space
  double expected_h2_order = 0.0;  // min{r+1, s} - 2
  std::vector<LevelRow> rows;
  Verdicts verdicts;
};

/// Refinement sweep over config.levels: mesh, assemble, solve, measure,
/// optionally probe; levels run on a small worker pool.
ConvergenceReport run(const RunConfig& config);

/// Pure re-evaluation of the verdicts from the stored rows.
Verdicts evaluate_verdicts(const ConvergenceReport& report);

void write_csv(const ConvergenceReport& report, std::ostream& os);
void write_json(const ConvergenceReport& report, std::ostream& os);

/// 0: all verdicts pass; 2: verdict failure; 3: solver/probe failure.
int exit_code(const ConvergenceReport& report);

/// Flat key=value config file (# comments); later assignments win.
RunConfig parse_config_file(const std::string& path);
/// Apply one key=value assignment; throws invalid_argument on unknown
/// keys or malformed values.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);
/// Consistency checks (levels increasing, DG fields iff method == dg).
void validate_config(const RunConfig& config);

}  // namespace ndfem
