// Command-line front end: gap, tau-curve, phase-diagram and verify.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "bcs/app/commands.hpp"
#include "bcs/app/config.hpp"
#include "bcs/app/verify.hpp"
#include "bcs/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bcs::app::ConfigError("cannot write " + path);
  out << text;
  if (!out) throw bcs::app::ConfigError("failed writing " + path);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
}

bcs::app::RunConfig need_config(const std::string& path) {
  if (path.empty()) throw bcs::app::ConfigError("--config is required for this command");
  return bcs::app::load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase boundaries of the BCS model with an imaginary magnetic field"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string filter;
  int threads = 1;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Output file (stdout when omitted)");
  app.add_option("--filter", filter, "verify: run only the suite with this name or number");
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  auto* gap = app.add_subcommand("gap", "Solve the gap equation at the configured (beta, t)");
  auto* tau = app.add_subcommand("tau-curve", "Trace the phase boundary t = tau(beta) and its local minima");
  auto* phase = app.add_subcommand("phase-diagram", "Classify a rectangular (beta, t) grid");
  auto* verify = app.add_subcommand("verify", "Run the verification suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (gap->parsed()) {
      emit(out_path, bcs::app::cmd_gap(need_config(config_path)).dump(2) + "\n");
    } else if (tau->parsed()) {
      const auto result = bcs::app::cmd_tau_curve(need_config(config_path), threads);
      const std::string summary = result.summary.dump(2) + "\n";
      if (out_path.empty()) {
        std::cout << result.csv;
        std::cerr << summary;
      } else {
        write_text(out_path, result.csv);
        write_text(out_path + ".summary.json", summary);
        std::cout << summary;
      }
    } else if (phase->parsed()) {
      emit(out_path, bcs::app::cmd_phase_diagram(need_config(config_path), threads));
    } else if (verify->parsed()) {
      bcs::app::VerifyOptions options;
      if (!config_path.empty()) options.config = bcs::app::load_config(config_path);
      options.filter = filter;
      options.threads = threads;
      const auto results = bcs::app::run_verify(options);
      for (const auto& r : results) std::cout << bcs::app::result_line(r) << '\n';
      const auto report = bcs::app::verify_report(results);
      if (!out_path.empty()) write_text(out_path, report.dump(2) + "\n");
      return report["passed"].get<bool>() ? kExitOk : kExitVerifyFailed;
    }
  } catch (const bcs::app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const bcs::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const bcs::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
