#pragma once

#include <json.hpp>
#include <string>

#include "bcs/app/config.hpp"

namespace bcs::app {

/// Shortest form that keeps 17 significant digits, independent of locale.
std::string format_double(double x);

/// {delta, regime, residual, iterations, beta, t} at the config's "gap" point.
nlohmann::json cmd_gap(const RunConfig& cfg);

struct TauCurveOutput {
  /// beta,tau,tau_prime,tau_second,flag; tau_second is blank unless requested.
  std::string csv;
  /// {beta_c, minima_count, minima, ambiguous, shape}
  nlohmann::json summary;
};

TauCurveOutput cmd_tau_curve(const RunConfig& cfg, int threads);

/// beta,t,regime,delta,F over the config's rectangular grid, rows ordered by
/// beta then t regardless of the thread count.
std::string cmd_phase_diagram(const RunConfig& cfg, int threads);

}  // namespace bcs::app
