#include "bcs/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bcs/closedform.hpp"
#include "parallel.hpp"
#include "rootfind.hpp"

namespace bcs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
}

// (cosh(sqrt v) - 1) / v, continued through v <= 0 as (1 - cos(sqrt(-v))) / (-v).
double psi(double v) {
  if (std::abs(v) < 1e-3) {
    return 0.5 + v * (1.0 / 24.0 + v * (1.0 / 720.0 + v * (1.0 / 40320.0 + v / 3628800.0)));
  }
  if (v > 0.0) {
    const double sh = std::sinh(0.5 * std::sqrt(v));
    return 2.0 * sh * sh / v;
  }
  const double sn = std::sin(0.5 * std::sqrt(-v));
  return 2.0 * sn * sn / (-v);
}

// sum_{m>=1} (y+1)^{m-1} (2a)^m / (2m)!
double series_p(double a, double y) { return 2.0 * a * psi(2.0 * a * (y + 1.0)); }

}  // namespace

TauPoint tau_point(const DispersionModel& model, Coupling U, double beta, const SolverConfig& cfg,
                   bool with_second) {
  check_beta(beta);
  const double tau = solve_tau(model, U, beta, cfg);
  const GapPartials p = gap_partials(model, U, beta, tau, 0.0, cfg);
  TauPoint out{tau, -p.dx / p.dt, kNaN, p.dx, p.g};
  if (with_second) {
    const double gt3 = p.dt * p.dt * p.dt;
    out.tau_second =
        (2.0 * p.dxt * p.dx * p.dt - p.dxx * p.dt * p.dt - p.dtt * p.dx * p.dx) / gt3;
  }
  return out;
}

double tau_prime(const DispersionModel& model, Coupling U, double beta, const SolverConfig& cfg) {
  return tau_point(model, U, beta, cfg, false).tau_prime;
}

double tau_second(const DispersionModel& model, Coupling U, double beta, const SolverConfig& cfg) {
  return tau_point(model, U, beta, cfg, true).tau_second;
}

void GridSpec::validate() const {
  if (core_points < 0 || decade_points < 0 || decades < 0)
    throw DomainError("grid sizes must be non-negative");
  if (core_points == 0 && (decade_points == 0 || decades == 0))
    throw DomainError("beta grid is empty");
  if (threads < 1) throw DomainError("thread count must be positive");
}

std::vector<double> beta_grid(double beta_c, const GridSpec& grid) {
  grid.validate();
  if (!(beta_c > 0.0)) throw DomainError("beta_c must be positive");
  std::vector<double> fractions;
  const int geometric = grid.decades * grid.decade_points;
  const double lowest = -static_cast<double>(grid.decades + 1);
  for (int j = 0; j < geometric; ++j)
    fractions.push_back(std::pow(10.0, lowest + static_cast<double>(j) / grid.decade_points));
  if (grid.core_points == 1) {
    fractions.push_back(0.5);
  } else {
    for (int j = 0; j < grid.core_points; ++j)
      fractions.push_back(0.1 + 0.8 * static_cast<double>(j) / (grid.core_points - 1));
  }
  for (int j = geometric - 1; j >= 0; --j)
    fractions.push_back(1.0 - std::pow(10.0, lowest + static_cast<double>(j) / grid.decade_points));

  std::vector<double> betas;
  betas.reserve(fractions.size());
  for (double f : fractions) betas.push_back(f * beta_c);
  return betas;
}

std::string_view sample_flag_name(SampleFlag f) {
  switch (f) {
    case SampleFlag::None:
      return "";
    case SampleFlag::Bracket:
      return "min_bracket";
    case SampleFlag::Plateau:
      return "plateau";
  }
  return "";
}

BoundaryCurve trace_curve(const DispersionModel& model, Coupling U, const GridSpec& grid,
                          const SolverConfig& cfg) {
  cfg.validate();
  grid.validate();
  check_admissible(model, U);

  BoundaryCurve curve;
  curve.beta_c = solve_beta_c(model, U, cfg);
  const std::vector<double> betas = beta_grid(curve.beta_c, grid);

  std::vector<TauPoint> points(betas.size());
  detail::parallel_for(betas.size(), grid.threads, [&](std::size_t i) {
    points[i] = tau_point(model, U, betas[i], cfg, grid.second_derivative);
  });

  curve.samples.reserve(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const auto& p = points[i];
    CurveSample s{betas[i], p.tau, p.tau_prime, std::nullopt, p.residual, SampleFlag::None};
    if (grid.second_derivative) s.tau_second = p.tau_second;
    if (std::abs(p.tau_prime) < kPlateauTolerance) s.flag = SampleFlag::Plateau;
    curve.samples.push_back(s);
  }

  SolverConfig refine = cfg;
  refine.root.x_rel_tol = 1e-13;
  auto slope = [&](double beta) { return tau_point(model, U, beta, cfg).tau_prime; };

  for (std::size_t i = 0; i + 1 < curve.samples.size(); ++i) {
    auto& left = curve.samples[i];
    auto& right = curve.samples[i + 1];
    if (!(left.tau_prime < 0.0 && right.tau_prime >= 0.0)) continue;
    if (std::abs(left.tau_prime) < kPlateauTolerance &&
        std::abs(right.tau_prime) < kPlateauTolerance) {
      curve.ambiguous.push_back({0.5 * (left.beta + right.beta), 0.5 * (left.tau + right.tau),
                                 kNaN, false});
      continue;
    }
    if (left.flag == SampleFlag::None) left.flag = SampleFlag::Bracket;
    if (right.flag == SampleFlag::None) right.flag = SampleFlag::Bracket;
    const auto root = detail::bracketed_root(slope, left.beta, right.beta, left.tau_prime,
                                             right.tau_prime, refine.root, "local minimum");
    const TauPoint at = tau_point(model, U, root.x, cfg, true);
    curve.local_minima.push_back({root.x, at.tau, at.tau_second, true});
  }
  return curve;
}

double w_tilde(double x, double y, double z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
    throw DomainError("w_tilde arguments must be finite");
  if (!(x >= 0.0) || !(z > 0.0)) throw DomainError("w_tilde requires x >= 0 and z > 0");
  if (y == -1.0) {
    const double zx = z * x;
    if (!(zx < 1.0)) throw DomainError("w_tilde(x, -1, z) requires z x < 1");
    return (x - 1.0) * (1.0 + zx) * (1.0 + zx) / ((1.0 - zx) * (1.0 + x) * (1.0 + x));
  }
  const double px = series_p(x, y);
  const double pzx = series_p(z * x, y);
  const double den = (1.0 + y * pzx) * (1.0 + px) * (1.0 + px);
  if (den == 0.0 || !std::isfinite(den)) throw DomainError("w_tilde: argument outside its domain");
  return -(1.0 + y * px) * (1.0 + pzx) * (1.0 + pzx) / den;
}

namespace {

void check_eta(double eta) {
  const double eta0 = closedform::algebraic_constants().eta0;
  if (!(eta > 0.0) || eta > eta0) throw DomainError("eta must lie in (0, 17 - 12 sqrt 2]");
}

}  // namespace

double a_plus(double eta) {
  check_eta(eta);
  const double eta0 = closedform::algebraic_constants().eta0;
  const double eta1 = 1.0 / eta0;
  // ((1+eta)/(6 eta))^2 - 1/eta = (eta0 - eta)(eta1 - eta) / (36 eta^2)
  const double root = std::sqrt(std::max(0.0, (eta0 - eta) * (eta1 - eta)));
  return ((1.0 + eta) + root) / (6.0 * eta);
}

double a_minus(double eta) { return (1.0 / eta) / a_plus(eta); }

double a_hat(double eta) {
  check_eta(eta);
  return (1.0 + eta) / (6.0 * eta);
}

double big_w(double x, double y, double z, double s) {
  if (!(z > 0.0)) throw DomainError("big_w requires z > 0");
  const double d1 = y + std::cosh(x);
  const double d2 = y + std::cosh(z * x);
  if (d1 == 0.0 || d2 == 0.0) throw DomainError("big_w: vanishing denominator");
  return std::sinh(x) / d1 + s * std::sinh(z * x) / (d2 * z);
}

std::string_view threshold_side_name(ThresholdSide s) {
  switch (s) {
    case ThresholdSide::Above:
      return "Above";
    case ThresholdSide::At:
      return "At";
    case ThresholdSide::Below:
      return "Below";
  }
  return "";
}

ShapeVerdict classify_shape(const DispersionModel& model, std::optional<Coupling> U) {
  const auto consts = closedform::algebraic_constants();
  ShapeVerdict v;
  v.level_plus = kNaN;
  v.level_minus = kNaN;
  int b = 0;
  int b_prime = 0;
  if (const auto* m = std::get_if<MultiOrbitalDiagonal>(&model.kind())) {
    b = m->b;
    b_prime = m->b_prime;
    v.s = static_cast<double>(b - b_prime) / b_prime;
  } else if (const auto* c = std::get_if<ConstantDiagonal>(&model.kind())) {
    b = c->b;
    v.s = kNaN;
  } else {
    throw DomainError("shape classification is available for diagonal models only");
  }

  v.ratio = model.e_min() / model.e_max();
  const double gap = v.ratio - consts.threshold;
  if (std::abs(gap) <= 4.0 * std::numeric_limits<double>::epsilon() * consts.threshold)
    v.threshold_side = ThresholdSide::At;
  else
    v.threshold_side = gap > 0.0 ? ThresholdSide::Above : ThresholdSide::Below;

  if (v.threshold_side == ThresholdSide::Below) {
    const double eta = v.ratio * v.ratio;
    v.level_plus = w_tilde(a_plus(eta), -1.0, eta);
    v.level_minus = w_tilde(a_minus(eta), -1.0, eta);
    const bool multiple = v.s >= v.level_plus && v.s < v.level_minus;
    v.prediction = multiple ? ShapePrediction::MultipleMinima : ShapePrediction::SingleMinimum;
  } else {
    v.prediction = ShapePrediction::SingleMinimum;
  }

  v.convexity_certified = U.has_value() && model.e_min() == model.e_max() &&
                          U->magnitude() <= model.e_min() / (std::sinh(2.0) * b);
  return v;
}

ExactTauCheck multiorbital_exact_tau_check(int b, int b_prime, double e_min, double e_max,
                                           Coupling U, double beta, const SolverConfig& cfg) {
  const auto q = closedform::multiorbital_quadratic(b, b_prime, e_min, e_max, U, beta);
  const double y = closedform::multiorbital_cos_half_tau(q);
  if (!(y > -1.0 && y < 0.0))
    throw DomainError("exact tau: cos(tau/2) outside (-1, 0); beta is not in (0, beta_c)");
  const double tau = 2.0 * std::acos(y);
  const auto model = DispersionModel::multi_orbital(b, b_prime, e_min, e_max);
  return {tau, g(model, U, beta, tau, 0.0, cfg)};
}

}  // namespace bcs
