#pragma once

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "bcs/boundary.hpp"
#include "bcs/dispersion.hpp"
#include "bcs/gapcore.hpp"

namespace bcs::app {

/// Malformed or out-of-range run configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GapRequest {
  double beta;
  double t;
};

struct AxisRange {
  double min;
  double max;
  int count;

  /// count == 1 yields min.
  double at(int i) const;
};

struct PhaseDiagramRequest {
  AxisRange beta;
  AxisRange t;
};

struct RunConfig {
  std::optional<DispersionModel> model;
  /// Coupling as given; negativity is checked at parse time.
  std::optional<double> U;
  SolverConfig solver;
  std::optional<GapRequest> gap;
  GridSpec tau_curve;
  std::optional<PhaseDiagramRequest> phase_diagram;

  const DispersionModel& require_model() const;
  Coupling require_coupling() const;
};

/// Model block: {"kind": "constant" | "multi_orbital" | "cosine_1d" | "bump", ...}
/// with an optional "dual_basis": a list of the d vectors v_j.
DispersionModel parse_model(const nlohmann::json& block);

RunConfig parse_config(const nlohmann::json& root);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace bcs::app
