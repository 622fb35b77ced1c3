#include "bcs/app/commands.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "../parallel.hpp"
#include "bcs/boundary.hpp"
#include "bcs/freeenergy.hpp"

namespace bcs::app {

using nlohmann::json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

json cmd_gap(const RunConfig& cfg) {
  if (!cfg.gap) throw ConfigError("config: the gap command needs a \"gap\" block");
  const auto& model = cfg.require_model();
  const Coupling U = cfg.require_coupling();
  const GapResult r = solve_delta(model, U, cfg.gap->beta, cfg.gap->t, cfg.solver);
  return json{{"delta", r.delta},
              {"regime", std::string(regime_name(r.regime))},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"beta", cfg.gap->beta},
              {"t", cfg.gap->t}};
}

namespace {

json minimum_json(const LocalMinimum& m) {
  json j{{"beta", m.beta}, {"tau", m.tau}};
  j["tau_second"] = std::isfinite(m.tau_second) ? json(m.tau_second) : json(nullptr);
  return j;
}

json shape_json(const DispersionModel& model, Coupling U, int minima_count) {
  const bool diagonal = std::holds_alternative<MultiOrbitalDiagonal>(model.kind()) ||
                        std::holds_alternative<ConstantDiagonal>(model.kind());
  if (!diagonal) return nullptr;
  ShapeVerdict v = classify_shape(model, U);
  v.minima_count = minima_count;
  auto number = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  return json{{"ratio", v.ratio},
              {"threshold_side", std::string(threshold_side_name(v.threshold_side))},
              {"prediction", v.prediction == ShapePrediction::MultipleMinima ? "multiple" : "single"},
              {"s", number(v.s)},
              {"level_plus", number(v.level_plus)},
              {"level_minus", number(v.level_minus)},
              {"minima_count", v.minima_count},
              {"convexity_certified", v.convexity_certified}};
}

}  // namespace

TauCurveOutput cmd_tau_curve(const RunConfig& cfg, int threads) {
  const auto& model = cfg.require_model();
  const Coupling U = cfg.require_coupling();
  GridSpec grid = cfg.tau_curve;
  grid.threads = threads;
  const BoundaryCurve curve = trace_curve(model, U, grid, cfg.solver);

  std::ostringstream csv;
  csv << "beta,tau,tau_prime,tau_second,flag\n";
  for (const auto& s : curve.samples) {
    csv << format_double(s.beta) << ',' << format_double(s.tau) << ',' << format_double(s.tau_prime)
        << ',' << (s.tau_second ? format_double(*s.tau_second) : "") << ','
        << sample_flag_name(s.flag) << '\n';
  }

  json minima = json::array();
  for (const auto& m : curve.local_minima) minima.push_back(minimum_json(m));
  json ambiguous = json::array();
  for (const auto& m : curve.ambiguous) ambiguous.push_back(minimum_json(m));
  json summary{{"beta_c", curve.beta_c},
               {"minima_count", curve.minima_count()},
               {"minima", minima},
               {"ambiguous", ambiguous},
               {"samples", curve.samples.size()}};
  summary["shape"] = shape_json(model, U, curve.minima_count());
  return {csv.str(), summary};
}

std::string cmd_phase_diagram(const RunConfig& cfg, int threads) {
  if (!cfg.phase_diagram) throw ConfigError("config: the phase-diagram command needs a \"phase_diagram\" block");
  const auto& model = cfg.require_model();
  const Coupling U = cfg.require_coupling();
  const auto& req = *cfg.phase_diagram;
  const auto nb = static_cast<std::size_t>(req.beta.count);
  const auto nt = static_cast<std::size_t>(req.t.count);

  struct Row {
    double beta;
    double t;
    Regime regime;
    double delta;
    double F;
  };
  std::vector<Row> rows(nb * nt);
  detail::parallel_for(rows.size(), threads, [&](std::size_t k) {
    const double beta = req.beta.at(static_cast<int>(k / nt));
    const double t = req.t.at(static_cast<int>(k % nt));
    const GapResult gap = solve_delta(model, U, beta, t, cfg.solver);
    rows[k] = {beta, t, gap.regime, gap.delta, free_energy_at(model, U, beta, t, gap.delta, cfg.solver)};
  });

  std::ostringstream csv;
  csv << "beta,t,regime,delta,F\n";
  for (const auto& r : rows) {
    csv << format_double(r.beta) << ',' << format_double(r.t) << ',' << regime_name(r.regime) << ','
        << format_double(r.delta) << ',' << format_double(r.F) << '\n';
  }
  return csv.str();
}

}  // namespace bcs::app
