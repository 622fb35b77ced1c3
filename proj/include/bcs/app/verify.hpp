#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "bcs/app/config.hpp"

namespace bcs::app {

struct SuiteResult {
  int number = 0;
  std::string name;
  bool passed = false;
  int checks = 0;
  double seconds = 0.0;
  /// One line for humans.
  std::string summary;
  /// First few failure messages.
  std::vector<std::string> failures;
  /// Largest observed error and its tolerance for each measured quantity.
  nlohmann::json metrics = nlohmann::json::object();
};

struct VerifyOptions {
  /// Adds the "config_model" suite, run against this model and coupling.
  std::optional<RunConfig> config;
  /// Suite name or number; empty selects every suite.
  std::string filter;
  int threads = 1;
};

struct SuiteInfo {
  int number;
  std::string name;
};

/// Built-in suites, numbered 1 to 12; the config suite is number 0.
std::vector<SuiteInfo> suite_catalog();

/// Throws ConfigError when the filter matches no suite.
std::vector<SuiteResult> run_verify(const VerifyOptions& options);

nlohmann::json verify_report(const std::vector<SuiteResult>& results);

/// "criterion 3 cosine_integral: PASS ..." style line.
std::string result_line(const SuiteResult& r);

}  // namespace bcs::app
