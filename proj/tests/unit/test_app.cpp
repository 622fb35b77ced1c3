#include <doctest.h>

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bcs/app/commands.hpp"
#include "bcs/app/config.hpp"
#include "bcs/app/verify.hpp"
#include "bcs/freeenergy.hpp"

using namespace bcs;
using namespace bcs::app;

namespace {

std::string bundled(const std::string& name) { return std::string(BCS_CONFIG_DIR) + "/" + name; }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("bundled configurations parse") {
  for (const char* name : {"two_level_emax6.json", "two_level_emax7.json", "two_level_emax9.json", "phase_diagram.json",
                           "constant_gap.json", "cosine_curve.json"}) {
    CAPTURE(name);
    const auto cfg = load_config(bundled(name));
    CHECK(cfg.model.has_value());
    CHECK(cfg.U.has_value());
  }
}

TEST_CASE("config schema errors") {
  CHECK_THROWS_AS(parse_config_text("{\"model\": "), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"U": 0.1})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"colour": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"model": {"kind": "constant", "b": 1, "e": 1, "extra": 2}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"model": {"kind": "multi_orbital", "b": 2, "b_prime": 2, "e_min": 1, "e_max": 2}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"model": {"kind": "square"}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"model": {"kind": "constant", "b": 1.5, "e": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"gap": {"beta": 1, "t": 1, "theta": 2}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"tau_curve": {"core_points": 0, "decades": 0}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"quadrature": {"tol": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"phase_diagram": {"beta": {"min": 0, "max": 1, "count": 2}, "t": {"min": 0, "max": 1, "count": 2}}})"),
                  ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  CHECK_THROWS_AS(RunConfig{}.require_model(), ConfigError);
}

TEST_CASE("config fields reach the model and solver") {
  const auto cfg = parse_config_text(R"({
    "model": {"kind": "bump", "d": 2, "b": 3, "s": 0.2, "t": 0.5, "e_min": 1, "e_max": 2,
              "dual_basis": [[2, 0], [1, 3]]},
    "U": -0.4,
    "quadrature": {"points": 8, "tol": 1e-11, "max_doublings": 5},
    "root": {"abs_tol": 1e-9, "max_iter": 50, "classification_tol": 1e-7},
    "gap": {"beta": 0.5, "theta": 4}
  })");
  const auto& m = cfg.require_model();
  CHECK(m.orbitals() == 3);
  CHECK(m.dimension() == 2);
  // Vectors v_1 = (2, 0) and v_2 = (1, 3) are the columns.
  CHECK(m.geometry().dual_basis() == std::vector<double>{2.0, 1.0, 0.0, 3.0});
  CHECK(cfg.require_coupling().value() == -0.4);
  CHECK(cfg.solver.quad.base_points_per_dim == 8);
  CHECK(cfg.solver.quad.max_doublings == 5);
  CHECK(cfg.solver.root.max_iter == 50);
  CHECK(cfg.gap->t == doctest::Approx(2.0));
}

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-20) == "-2.4999999999999999e-20");
  for (double x : {M_PI, 1e300, 6.02214076e23, 1.0 / 3.0}) {
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
  }
}

TEST_CASE("gap command") {
  const auto ordered = cmd_gap(load_config(bundled("constant_gap.json")));
  CHECK(ordered["regime"] == "QPlus");
  CHECK(ordered["delta"].get<double>() > 0.0);
  auto cfg = load_config(bundled("two_level_emax7.json"));
  cfg.gap = GapRequest{0.05, M_PI};
  const auto off = cmd_gap(cfg);
  CHECK(off["regime"] == "QMinus");
  CHECK(off["delta"].get<double>() == 0.0);
  CHECK(off.contains("iterations"));
  CHECK(off.contains("residual"));
  cfg.gap.reset();
  CHECK_THROWS_AS(cmd_gap(cfg), ConfigError);
}

TEST_CASE("tau-curve command") {
  auto cfg = load_config(bundled("two_level_emax7.json"));
  cfg.tau_curve.core_points = 128;
  cfg.tau_curve.decade_points = 16;
  const auto out = cmd_tau_curve(cfg, 2);
  const auto rows = parse_csv(out.csv);
  REQUIRE(rows.size() == 1 + 128 + 2 * 3 * 16);
  CHECK(rows[0] == std::vector<std::string>{"beta", "tau", "tau_prime", "tau_second", "flag"});
  CHECK(out.summary["minima_count"] == 2);
  CHECK(out.summary["minima"].size() == 2);
  CHECK(out.summary["shape"]["prediction"] == "multiple");
  int brackets = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) brackets += rows[i][4] == "min_bracket";
  CHECK(brackets == 4);
  CHECK(cmd_tau_curve(cfg, 1).csv == out.csv);
}

TEST_CASE("phase diagram is deterministic and has the expected structure") {
  auto cfg = load_config(bundled("phase_diagram.json"));
  cfg.phase_diagram->beta = {0.01, 0.19, 10};
  cfg.phase_diagram->t = {0.0, 4.0 * M_PI, 81};
  const std::string serial = cmd_phase_diagram(cfg, 1);
  CHECK(cmd_phase_diagram(cfg, 3) == serial);

  const double beta_c = solve_beta_c(*cfg.model, cfg.require_coupling());
  std::map<std::string, std::vector<std::string>> columns;
  const auto rows = parse_csv(serial);
  REQUIRE(rows.size() == 1 + 10 * 81);
  CHECK(rows[0] == std::vector<std::string>{"beta", "t", "regime", "delta", "F"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    columns[rows[i][0]].push_back(rows[i][2]);
    if (std::abs(std::stod(rows[i][1]) - M_PI) < 1e-12) CHECK(rows[i][2] == "QMinus");
  }
  for (const auto& [beta_text, regimes] : columns) {
    const double beta = std::stod(beta_text);
    int flips = 0;
    for (std::size_t j = 1; j < regimes.size(); ++j) flips += regimes[j] != regimes[j - 1];
    if (beta < beta_c) {
      CHECK(flips == 2);
    } else {
      CHECK(flips == 0);
      CHECK(regimes.front() == "QMinus");
    }
  }
}

TEST_CASE("verify selects suites by name or number") {
  VerifyOptions options;
  options.filter = "10";
  auto results = run_verify(options);
  REQUIRE(results.size() == 1);
  CHECK(results[0].name == "algebraic_constants");
  CHECK(results[0].passed);
  options.filter = "algebraic_constants";
  CHECK(run_verify(options).size() == 1);
  options.filter = "nothing";
  CHECK_THROWS_AS(run_verify(options), ConfigError);
  options.filter = "config_model";
  CHECK_THROWS_AS(run_verify(options), ConfigError);
  CHECK(suite_catalog().size() == 13);
}

TEST_CASE("inadmissible coupling fails the config suite") {
  VerifyOptions options;
  options.config = parse_config_text(R"({"model": {"kind": "constant", "b": 1, "e": 1}, "U": -3})");
  options.filter = "config_model";
  const auto results = run_verify(options);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].passed);
  CHECK_FALSE(verify_report(results)["passed"].get<bool>());
}
