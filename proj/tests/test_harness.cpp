// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The ndfem authors

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ndfem/harness.hpp"

using namespace ndfem;

namespace {

std::string csv_without_time(const ConvergenceReport& rep) {
  std::ostringstream os;
  write_csv(rep, os);
  std::istringstream is(os.str());
  std::string line, out;
  while (std::getline(is, line)) {
    const auto last_comma = line.rfind(',');
    out += (last_comma == std::string::npos) ? line : line.substr(0, last_comma);
    out += '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("eoc arithmetic") {
  {
    const auto orders = eoc(std::vector<double>{1.0, 0.25}, std::vector<double>{1.0, 0.5});
    REQUIRE(orders.size() == 1);
    CHECK_FALSE(orders[0].exact);
    CHECK(orders[0].value == doctest::Approx(2.0).epsilon(1e-14));
  }
  {
    const auto orders =
        eoc(std::vector<double>{1.0, 0.5, 0.25}, std::vector<double>{1.0, 0.5, 0.25});
    REQUIRE(orders.size() == 2);
    CHECK(orders[0].value == doctest::Approx(1.0));
    CHECK(orders[1].value == doctest::Approx(1.0));
  }
  {
    const auto orders = eoc(std::vector<double>{1e-15, 1e-15}, std::vector<double>{1.0, 0.5});
    REQUIRE(orders.size() == 1);
    CHECK(orders[0].exact);
  }
  CHECK_THROWS_AS(eoc(std::vector<double>{1.0}, std::vector<double>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(eoc(std::vector<double>{1.0, -1.0}, std::vector<double>{1.0, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(eoc(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("config validation") {
  RunConfig cfg;
  cfg.levels = {8, 8};
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.levels = {16, 8};
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.levels = {8, 16};
  cfg.epsilon = 1;  // DG-only field with method=c0
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.epsilon.reset();
  cfg.degree = 5;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
  cfg.degree = 2;
  CHECK_NOTHROW(validate_config(cfg));
  cfg.method = Method::dg;
  cfg.probe = true;
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("config file parsing and overrides") {
  const std::string path = "test_harness_config.tmp";
  {
    std::ofstream os(path);
    os << "# comment\n";
    os << "problem = hoelder-sin\n";
    os << "degree = 1\n";
    os << "levels = 2,4,8\n";
    os << "format = json\n";
    os << "probe = true\n";
  }
  RunConfig cfg = parse_config_file(path);
  CHECK(cfg.problem == "hoelder-sin");
  CHECK(cfg.degree == 1);
  CHECK(cfg.levels == std::vector<int>{2, 4, 8});
  CHECK(cfg.format == OutputFormat::json);
  CHECK(cfg.probe);
  apply_config_entry(cfg, "degree", "3");
  CHECK(cfg.degree == 3);
  CHECK_THROWS_AS(apply_config_entry(cfg, "nonsense", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(cfg, "method", "dg0"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(cfg, "levels", "4,x"), std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("single level: no EOC rows, exit success") {
  RunConfig cfg;
  cfg.problem = "identity-sin";
  cfg.degree = 1;
  cfg.levels = {8};
  const ConvergenceReport rep = run(cfg);
  REQUIRE(rep.rows.size() == 1);
  CHECK_FALSE(rep.rows[0].eoc_h1.has_value());
  CHECK(exit_code(rep) == 0);
}

TEST_CASE("small end-to-end run with verdicts") {
  RunConfig cfg;
  cfg.problem = "identity-sin";
  cfg.degree = 1;
  cfg.levels = {4, 8, 16};
  const ConvergenceReport rep = run(cfg);
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.expected_h1_order == 1.0);
  CHECK(rep.approximation_exponent == 2.0);
  REQUIRE(rep.rows[2].eoc_h1.has_value());
  CHECK(rep.rows[2].eoc_h1->value >= 0.8);
  CHECK(rep.rows[2].eoc_h1->value <= 1.2);
  CHECK(rep.verdicts.pass());
  CHECK(exit_code(rep) == 0);
  for (const LevelRow& row : rep.rows) CHECK(row.residual <= 1e-10);
}

TEST_CASE("DG runs converge for linear elements") {
  RunConfig cfg;
  cfg.problem = "identity-sin";
  cfg.degree = 1;
  cfg.method = Method::dg;
  cfg.epsilon = 1;
  cfg.gamma0 = 10.0;
  cfg.levels = {8, 16, 32};
  const ConvergenceReport rep = run(cfg);
  REQUIRE(rep.rows.back().eoc_h1.has_value());
  CHECK(rep.rows.back().eoc_h1->value >= 0.8);
  CHECK(rep.rows.back().eoc_h1->value <= 1.3);
  CHECK(exit_code(rep) == 0);
  // DG rows leave the broken-H2 and sigma columns empty
  CHECK(std::isnan(rep.rows.back().h2_broken));
  CHECK_FALSE(rep.rows.back().probe.has_value());
}

TEST_CASE("reduced-regularity solutions limit the observed order") {
  RunConfig cfg;
  cfg.problem = "identity-reduced";
  cfg.degree = 1;
  cfg.beta = 0.75;  // u in H^s only for s < 2.25
  cfg.levels = {8, 16, 32};
  const ConvergenceReport rep = run(cfg);
  CHECK(rep.expected_h1_order == doctest::Approx(1.0));  // min{r+1, 2.25} - 1
  CHECK(rep.approximation_exponent == doctest::Approx(2.0));
  REQUIRE(rep.rows.back().eoc_h1.has_value());
  CHECK(rep.rows.back().eoc_h1->value >= 0.8);
  CHECK(rep.rows.back().eoc_h1->value <= 1.3);
  CHECK(exit_code(rep) == 0);
}

TEST_CASE("reports are deterministic apart from the wall-time column") {
  RunConfig cfg;
  cfg.problem = "smooth-sin";
  cfg.degree = 2;
  cfg.levels = {2, 4};
  cfg.probe = true;
  cfg.seed = 7;
  const ConvergenceReport a = run(cfg);
  const ConvergenceReport b = run(cfg);
  CHECK(csv_without_time(a) == csv_without_time(b));
}

TEST_CASE("verdict evaluation is pure") {
  RunConfig cfg;
  cfg.problem = "identity-poly";
  cfg.degree = 2;
  cfg.levels = {2, 4, 8};
  const ConvergenceReport rep = run(cfg);
  const Verdicts again = evaluate_verdicts(rep);
  CHECK(again.h1_rate_ok == rep.verdicts.h1_rate_ok);
  CHECK(again.h2_rate_ok == rep.verdicts.h2_rate_ok);
  CHECK(again.residual_ok == rep.verdicts.residual_ok);
  CHECK(again.no_failures == rep.verdicts.no_failures);
}

TEST_CASE("CSV schema") {
  RunConfig cfg;
  cfg.problem = "identity-sin";
  cfg.degree = 1;
  cfg.levels = {2, 4};
  const ConvergenceReport rep = run(cfg);
  std::ostringstream os;
  write_csv(rep, os);
  std::istringstream is(os.str());
  std::string line;
  std::string header;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') {
      header = line;
      break;
    }
  CHECK(header == "n,h,dofs,l2,h1,h2_broken,eoc_l2,eoc_h1,eoc_h2,sigma_h1,sigma_h2,time_ms");
  // first data row has empty EOC and sigma fields
  std::getline(is, line);
  std::vector<std::string> fields;
  std::stringstream fs(line);
  std::string f;
  while (std::getline(fs, f, ',')) fields.push_back(f);
  // trailing time field present, EOC fields (6..8) and sigma (9..10) empty
  CHECK(fields.size() == 12);
  CHECK(fields[6].empty());
  CHECK(fields[7].empty());
  CHECK(fields[8].empty());
  CHECK(fields[9].empty());
  CHECK(fields[10].empty());
}

TEST_CASE("JSON report carries config echo and verdicts") {
  RunConfig cfg;
  cfg.problem = "identity-sin";
  cfg.degree = 1;
  cfg.levels = {2, 4};
  cfg.format = OutputFormat::json;
  cfg.probe = true;
  const ConvergenceReport rep = run(cfg);
  std::ostringstream os;
  write_json(rep, os);
  const std::string s = os.str();
  CHECK(s.find("\"config\"") != std::string::npos);
  CHECK(s.find("\"verdicts\"") != std::string::npos);
  CHECK(s.find("\"identity-sin\"") != std::string::npos);
  CHECK(s.find("\"sigma_adjoint\"") != std::string::npos);
  CHECK(s.find("\"exit_code\": 0") != std::string::npos);
}

TEST_CASE("exit codes distinguish verdict failures from solver failures") {
  RunConfig cfg;
  cfg.problem = "identity-sin";
  cfg.degree = 1;
  cfg.levels = {2, 4};
  ConvergenceReport rep = run(cfg);
  REQUIRE(exit_code(rep) == 0);

  ConvergenceReport bad_rate = rep;
  bad_rate.rows[1].eoc_h1 = EocValue{-3.0, false};
  bad_rate.verdicts = evaluate_verdicts(bad_rate);
  CHECK(exit_code(bad_rate) == 2);

  ConvergenceReport failed = rep;
  failed.rows[1].error_stage = "solve: synthetic failure";
  failed.verdicts = evaluate_verdicts(failed);
  CHECK(exit_code(failed) == 3);
}

TEST_CASE("dumps are written for the finest level") {
  RunConfig cfg;
  cfg.problem = "identity-sin";
  cfg.degree = 1;
  cfg.levels = {2, 4};
  cfg.dump_mesh = "test_harness_mesh.tmp";
  cfg.dump_matrix = "test_harness_matrix.tmp";
  cfg.dump_solution = "test_harness_solution.tmp";
  const ConvergenceReport rep = run(cfg);
  REQUIRE(exit_code(rep) == 0);

  std::ifstream mesh(*cfg.dump_mesh);
  REQUIRE(mesh.good());
  std::string word;
  int nv = 0, nc = 0;
  mesh >> word >> nv >> word >> nc;
  CHECK(nv == 25);  // unit_square(4)
  CHECK(nc == 32);

  std::ifstream mat(*cfg.dump_matrix);
  REQUIRE(mat.good());
  std::string percent;
  int rows = 0, cols = 0;
  long nnz = 0;
  mat >> percent >> rows >> cols >> nnz;
  CHECK(percent == "%");
  CHECK(rows == 9);  // free DOFs of P1 on unit_square(4)
  CHECK(cols == 9);
  CHECK(nnz > 0);

  std::ifstream sol(*cfg.dump_solution);
  REQUIRE(sol.good());
  int lines = 0;
  std::string line;
  while (std::getline(sol, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 25);

  std::remove(cfg.dump_mesh->c_str());
  std::remove(cfg.dump_matrix->c_str());
  std::remove(cfg.dump_solution->c_str());
}
