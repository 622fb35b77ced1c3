#include "bcs/app/verify.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "bcs/boundary.hpp"
#include "bcs/closedform.hpp"
#include "bcs/freeenergy.hpp"

namespace bcs::app {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxFailureMessages = 12;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

class SuiteLog {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) fail(what);
  }

  /// Records err against tol under `metric`; a NaN error fails.
  void within(const std::string& metric, double err, double tol, const std::string& where) {
    ++checks_;
    auto& m = metrics_[metric];
    const double shown = std::isnan(err) ? std::numeric_limits<double>::infinity() : err;
    if (!m.contains("max") || shown > m["max"].get<double>()) m["max"] = shown;
    m["tol"] = tol;
    if (!(err <= tol)) fail(metric + " = " + fmt(err) + " > " + fmt(tol) + " at " + where);
  }

  void note(const std::string& key, json value) { metrics_[key] = std::move(value); }

  void fail(const std::string& what) {
    ++failed_;
    if (failures_.size() < kMaxFailureMessages) failures_.push_back(what);
  }

  int checks() const { return checks_; }
  bool ok() const { return failed_ == 0; }
  std::vector<std::string> take_failures() { return std::move(failures_); }
  json take_metrics() { return std::move(metrics_); }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
  json metrics_ = json::object();
};

struct Context {
  const VerifyOptions& options;
  SuiteLog& log;
  std::string summary;
};

double bound_beta_c(const DispersionModel& model, Coupling U) {
  const double e = model.e_min();
  return (2.0 / e) * std::atanh(model.orbitals() * U.magnitude() / (2.0 * e));
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

SolverConfig tight_quadrature() {
  SolverConfig cfg;
  cfg.quad.abs_tol = 1e-13;
  return cfg;
}

// --- two-level family (b = 8, b' = 7) and its closed-form oracle ---------------------------

struct TwoLevelCase {
  double e_max;
  int expected_minima;
};
constexpr int kTwoLevelB = 8;
constexpr int kTwoLevelBPrime = 7;
constexpr double kTwoLevelEMin = 1.0;
constexpr double kTwoLevelU = -0.125;
constexpr TwoLevelCase kTwoLevel[] = {{6.0, 1}, {7.0, 2}, {9.0, 1}};

// cos(tau/2) on the boundary of the two-level diagonal model and its beta
// derivative, from the quadratic y^2 + D1 y + D0 = 0.
struct ExactY {
  double y;
  double dy;
};

ExactY exact_y(int b, int b_prime, double e1, double e2, double u, double beta) {
  const double p = b_prime;
  const double q = b - b_prime;
  const double x1 = std::cosh(beta * e1), s1 = std::sinh(beta * e1);
  const double x2 = std::cosh(beta * e2), s2 = std::sinh(beta * e2);
  const double y1 = 0.5 * u * p / e1 * s1;
  const double y2 = 0.5 * u * q / e2 * s2;
  const double d1 = x1 + x2 - y1 - y2;
  const double disc = (x1 - x2 - y1 + y2) * (x1 - x2 - y1 + y2) + 4.0 * y1 * y2;
  const double r = std::sqrt(disc);
  const double dd1 = e1 * s1 + e2 * s2 - 0.5 * u * (p * x1 + q * x2);
  const double dd0 = e1 * s1 * x2 + e2 * x1 * s2 -
                     0.5 * u * (p / e1 * (e1 * x1 * x2 + e2 * s1 * s2) + q / e2 * (e1 * s1 * s2 + e2 * x1 * x2));
  return {0.5 * (-d1 + r), 0.5 * (-dd1 + (d1 * dd1 - 2.0 * dd0) / r)};
}

template <class F>
double bisect_root(F f, double lo, double hi) {
  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 2);
  std::uintmax_t iters = 400;
  const auto r = boost::math::tools::bisect(f, lo, hi, tol, iters);
  return 0.5 * (r.first + r.second);
}

// Local minima of tau from sign changes of dy/dbeta (+ to -) on a fine grid.
std::vector<double> oracle_minima(double e_max, double beta_c) {
  const double u = -kTwoLevelU;
  auto dy = [&](double beta) { return exact_y(kTwoLevelB, kTwoLevelBPrime, e_max, kTwoLevelEMin, u, beta).dy; };
  constexpr int n = 20000;
  std::vector<double> minima;
  double prev_beta = beta_c / n;
  double prev = dy(prev_beta);
  for (int i = 2; i < n; ++i) {
    const double beta = beta_c * i / n;
    const double cur = dy(beta);
    if (prev > 0.0 && cur <= 0.0) minima.push_back(bisect_root(dy, prev_beta, beta));
    prev = cur;
    prev_beta = beta;
  }
  return minima;
}

double oracle_beta_c(double e_max) {
  const double u = -kTwoLevelU;
  auto f = [&](double beta) { return exact_y(kTwoLevelB, kTwoLevelBPrime, e_max, kTwoLevelEMin, u, beta).y + 1.0; };
  const double hi = (2.0 / kTwoLevelEMin) * std::atanh(kTwoLevelB * u / (2.0 * kTwoLevelEMin));
  return bisect_root(f, 1e-3 * hi, hi);
}

DispersionModel two_level_model(double e_max) {
  return DispersionModel::multi_orbital(kTwoLevelB, kTwoLevelBPrime, kTwoLevelEMin, e_max);
}

void suite_two_level_minima(Context& cx) {
  GridSpec grid;
  grid.threads = cx.options.threads;
  std::string counts;
  double worst = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& tl : kTwoLevel) {
    const auto curve = trace_curve(two_level_model(tl.e_max), Coupling(kTwoLevelU), grid);
    const auto oracle = oracle_minima(tl.e_max, oracle_beta_c(tl.e_max));
    const std::string where = "e_max=" + fmt(tl.e_max);
    counts += (counts.empty() ? "" : ",") + std::to_string(curve.minima_count());
    cx.log.expect(curve.minima_count() == tl.expected_minima,
                  where + ": found " + std::to_string(curve.minima_count()) + " minima, expected " +
                      std::to_string(tl.expected_minima));
    cx.log.expect(static_cast<int>(oracle.size()) == tl.expected_minima,
                  where + ": closed-form oracle found " + std::to_string(oracle.size()) + " minima");
    cx.log.expect(curve.ambiguous.empty(), where + ": ambiguous plateau brackets");
    if (oracle.size() != curve.local_minima.size()) continue;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      const double err = std::abs(curve.local_minima[i].beta - oracle[i]);
      worst = std::max(worst, err);
      cx.log.within("minimum_beta_error", err, 1e-6, where);
      cx.log.expect(curve.local_minima[i].tau_second >= 0.0, where + ": negative tau'' at a minimum");
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  cx.log.within("runtime_seconds", elapsed, 60.0, "three default-grid curves");
  cx.summary = "minima counts (" + counts + "), max |beta* - exact| " + fmt(worst);
}

void suite_exact_tau(Context& cx) {
  const Coupling U(kTwoLevelU);
  double worst = 0.0;
  for (const auto& tl : kTwoLevel) {
    const auto model = two_level_model(tl.e_max);
    const double beta_c = solve_beta_c(model, U);
    for (int i = 1; i <= 200; ++i) {
      const double beta = beta_c * i / 201.0;
      const double numeric = solve_tau(model, U, beta);
      const auto exact = multiorbital_exact_tau_check(kTwoLevelB, kTwoLevelBPrime, kTwoLevelEMin, tl.e_max, U, beta);
      const double err = std::abs(exact.tau - numeric);
      worst = std::max(worst, err);
      cx.log.within("tau_error", err, 1e-8, "e_max=" + fmt(tl.e_max) + " beta=" + fmt(beta));
    }
  }
  cx.summary = "600 boundary points, max |tau_exact - tau_numeric| " + fmt(worst);
}

void suite_cosine_integral(Context& cx) {
  std::mt19937_64 rng(20261017);
  std::uniform_real_distribution<double> pick(0.0, 10.0);
  const auto start = std::chrono::steady_clock::now();
  QuadratureConfig quad;
  quad.abs_tol = 1e-13;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = pick(rng);
    const double t_hop = pick(rng);
    const auto model = DispersionModel::cosine_1d(t_hop, 1.0);
    const double numeric = trace_integral(model, [x](double lambda) { return 1.0 / (1.0 + x * lambda * lambda); }, quad);
    const double err = std::abs(numeric - closedform::cosine_integral_closed(x, t_hop));
    worst = std::max(worst, err);
    cx.log.within("integral_error", err, 1e-10, "x=" + fmt(x) + " t=" + fmt(t_hop));
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  cx.log.within("runtime_seconds", elapsed, 5.0, "50 integrals");
  cx.summary = "50 random (x, t_hop), max error " + fmt(worst) + " in " + fmt(elapsed) + " s";
}

void suite_constant_identities(Context& cx) {
  double worst_bc = 0.0;
  double worst_tau = 0.0;
  int points = 0;
  for (int b : {1, 2, 3, 5}) {
    for (double e : {0.5, 1.0, 2.5}) {
      for (double frac : {0.05, 0.3, 0.7, 0.95}) {
        const Coupling U(-frac * 2.0 * e / b);
        const auto model = DispersionModel::constant(b, e);
        const std::string where = "b=" + std::to_string(b) + " e=" + fmt(e) + " U=" + fmt(U.value());
        const double beta_c = solve_beta_c(model, U);
        const double err_bc = std::abs(beta_c - closedform::constant_model_beta_c(b, e, U));
        worst_bc = std::max(worst_bc, err_bc);
        cx.log.within("beta_c_error", err_bc, 1e-10, where);
        for (int j = 1; j <= 9; ++j) {
          const double beta = beta_c * j / 10.0;
          const double err = std::abs(solve_tau(model, U, beta) - closedform::constant_model_tau(b, e, U, beta));
          worst_tau = std::max(worst_tau, err);
          cx.log.within("tau_error", err, 1e-10, where + " beta=" + fmt(beta));
          ++points;
        }
      }
    }
  }
  cx.summary = "48 couplings, " + std::to_string(points) + " tau points; max beta_c error " +
               fmt(worst_bc) + ", max tau error " + fmt(worst_tau);
}

void suite_convexity(Context& cx) {
  const double e = 1.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (int b : {1, 2}) {
    for (double u : {e / (std::sinh(2.0) * b), 0.05 / b}) {
      const Coupling U(-u);
      const auto model = DispersionModel::constant(b, e);
      const std::string where = "b=" + std::to_string(b) + " U=" + fmt(-u);
      cx.log.expect(classify_shape(model, U).convexity_certified, where + ": coupling not certified");
      const double beta_c = solve_beta_c(model, U);
      for (int i = 0; i < 100; ++i) {
        const double beta = beta_c * (0.01 + 0.98 * (i + 0.5) / 100.0);
        const double d2 = tau_second(model, U, beta);
        smallest = std::min(smallest, d2);
        cx.log.expect(d2 > 0.0, where + ": tau'' = " + fmt(d2) + " at beta=" + fmt(beta));
      }
    }
  }
  cx.log.note("min_tau_second", smallest);
  cx.summary = "400 points in (0.01, 0.99) beta_c, min tau'' " + fmt(smallest);
}

struct RandomCase {
  DispersionModel model;
  Coupling U;
  std::string label;
};

RandomCase random_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> kind(0, 2);
  const double frac = 0.05 + 0.9 * unit(rng);
  const double e_min = 0.5 + 1.5 * unit(rng);
  switch (kind(rng)) {
    case 0: {
      const int b = 1 + static_cast<int>(4 * unit(rng));
      return {DispersionModel::constant(b, e_min), Coupling(-frac * 2.0 * e_min / b),
              "constant b=" + std::to_string(b)};
    }
    case 1: {
      const int b = 2 + static_cast<int>(7 * unit(rng));
      const int bp = 1 + static_cast<int>((b - 1) * unit(rng));
      const double e_max = e_min * (1.0 + 8.0 * unit(rng));
      return {DispersionModel::multi_orbital(b, bp, e_min, e_max), Coupling(-frac * 2.0 * e_min / b),
              "multi_orbital b=" + std::to_string(b) + " b'=" + std::to_string(bp)};
    }
    default:
      return {DispersionModel::cosine_1d(2.0 * unit(rng), e_min), Coupling(-frac * 2.0 * e_min),
              "cosine_1d"};
  }
}

void suite_gap_equation(Context& cx) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const SolverConfig cfg;
  int ordered = 0;
  int disordered = 0;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto c = random_case(rng);
    const double beta = 1.2 * bound_beta_c(c.model, c.U) * (0.02 + 0.98 * unit(rng));
    // Half of the draws concentrate near t = 2 pi, where the ordered region lies.
    const double t = i % 2 == 0 ? 4.0 * kPi * unit(rng) : 2.0 * kPi + 0.6 * kPi * (unit(rng) - 0.5);
    const std::string where = c.label + " beta=" + fmt(beta) + " t=" + fmt(t);
    const double g0 = g(c.model, c.U, beta, t, 0.0, cfg);
    const GapResult r = solve_delta(c.model, c.U, beta, t, cfg);
    const bool positive = g0 > cfg.root.classification_tol;
    cx.log.expect((r.regime == Regime::QPlus) == positive, where + ": regime disagrees with sign of g");
    if (r.regime != Regime::QPlus) {
      cx.log.expect(r.delta == 0.0, where + ": nonzero delta outside the ordered region");
      ++disordered;
      continue;
    }
    ++ordered;
    const double residual = std::abs(g(c.model, c.U, beta, t, r.delta, cfg));
    worst = std::max(worst, residual);
    cx.log.within("gap_residual", residual, 1e-10, where);
    double prev = g0;
    for (int j = 1; j <= 10; ++j) {
      const double z = 2.0 * r.delta * j / 11.0;
      const double gz = g(c.model, c.U, beta, t, z, cfg);
      cx.log.expect(gz < prev, where + ": g not decreasing at z=" + fmt(z));
      cx.log.expect((z < r.delta) == (gz > 0.0), where + ": second sign change near z=" + fmt(z));
      prev = gz;
    }
  }
  cx.log.expect(ordered > 0 && disordered > 0, "random cases did not cover both regimes");
  cx.log.note("ordered_cases", ordered);
  cx.log.note("disordered_cases", disordered);
  cx.summary = std::to_string(ordered) + " ordered / " + std::to_string(disordered) +
               " disordered cases, max |g(Delta)| " + fmt(worst);
}

std::vector<RandomCase> bound_cases() {
  std::vector<RandomCase> cases;
  for (const auto& tl : kTwoLevel) cases.push_back({two_level_model(tl.e_max), Coupling(kTwoLevelU), "two_level e_max=" + fmt(tl.e_max)});
  for (int b : {1, 3})
    for (double frac : {0.1, 0.5, 0.9})
      cases.push_back({DispersionModel::constant(b, 1.0), Coupling(-frac * 2.0 / b),
                       "constant b=" + std::to_string(b) + " frac=" + fmt(frac)});
  cases.push_back({DispersionModel::cosine_1d(1.0, 1.0), Coupling(-0.125), "cosine_1d t=1"});
  cases.push_back({DispersionModel::cosine_1d(0.3, 0.5), Coupling(-0.6), "cosine_1d t=0.3"});
  cases.push_back({build_bump_dispersion(1, 2, {0.3, 0.6}, 1.0, 4.0), Coupling(-0.5), "bump d=1"});
  return cases;
}

void suite_beta_c_bound(Context& cx) {
  double tightest = std::numeric_limits<double>::infinity();
  for (const auto& c : bound_cases()) {
    const double beta_c = solve_beta_c(c.model, c.U);
    const double bound = bound_beta_c(c.model, c.U);
    tightest = std::min(tightest, bound - beta_c);
    cx.log.expect(beta_c <= bound + 1e-10, c.label + ": beta_c " + fmt(beta_c) + " above bound " + fmt(bound));
    cx.log.expect(std::abs(g(c.model, c.U, beta_c, 2.0 * kPi, 0.0)) <= 1e-10, c.label + ": g(beta_c, 2 pi, 0) not zero");
  }
  cx.log.note("min_bound_slack", tightest);
  cx.summary = std::to_string(bound_cases().size()) + " configurations, min slack " + fmt(tightest);
}

void suite_c1_jumps(Context& cx) {
  const std::vector<RandomCase> models = {
      {two_level_model(7.0), Coupling(kTwoLevelU), "multi_orbital e_max=7"},
      {DispersionModel::constant(1, 1.0), Coupling(-0.125), "constant"},
      {DispersionModel::cosine_1d(1.0, 1.0), Coupling(-0.125), "cosine_1d"},
  };
  double worst_c1 = 0.0;
  double worst_jump = 0.0;
  double worst_beta_jump = 0.0;
  double worst_critical = 0.0;
  for (const auto& m : models) {
    const double beta_c = solve_beta_c(m.model, m.U);
    for (int j = 0; j < 10; ++j) {
      const double beta0 = beta_c * (0.1 + 0.8 * j / 9.0);
      const std::string where = m.label + " beta0=" + fmt(beta0);
      const JumpReport r = second_derivative_jumps(m.model, m.U, beta0);
      worst_c1 = std::max({worst_c1, r.c1_mismatch_dt, r.c1_mismatch_dbeta});
      cx.log.within("c1_mismatch_dt", r.c1_mismatch_dt, 1e-6, where);
      cx.log.within("c1_mismatch_dbeta", r.c1_mismatch_dbeta, 1e-6, where);
      const double rel = std::abs(r.jump_d2F_dt2 - r.analytic_jump_dt2) / std::abs(r.analytic_jump_dt2);
      worst_jump = std::max(worst_jump, rel);
      cx.log.within("jump_dt2_relative_error", rel, 1e-2, where);
      cx.log.expect(r.analytic_jump_dt2 < 0.0 && r.jump_d2F_dt2 < 0.0,
                    where + ": t-jump is not negative (ordered minus disordered)");
      worst_beta_jump = std::max(worst_beta_jump, std::abs(r.jump_d2F_dbeta2 - r.analytic_jump_dbeta2) /
                                                      std::max(std::abs(r.analytic_jump_dbeta2), 1.0));
    }
    const JumpReport crit = second_derivative_jumps(m.model, m.U, beta_c);
    const double mag = std::max(std::abs(crit.jump_d2F_dt2), std::abs(crit.analytic_jump_dt2));
    worst_critical = std::max(worst_critical, mag);
    cx.log.within("critical_jump", mag, 1e-6, m.label + " at (beta_c, 2 pi)");
  }
  cx.log.note("beta_jump_relative_error", worst_beta_jump);
  cx.summary = "30 boundary points, max C1 mismatch " + fmt(worst_c1) + ", max t-jump error " +
               fmt(worst_jump) + ", critical jump " + fmt(worst_critical);
}

void suite_analytic_derivatives(Context& cx) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const SolverConfig cfg = tight_quadrature();
  double worst = 0.0;
  auto check = [&](const std::string& metric, double analytic, double oracle, double tol,
                   const std::string& where) {
    const double err = rel_err(analytic, oracle);
    worst = std::max(worst, err / tol);
    cx.log.within(metric, err, tol, where);
  };
  for (int i = 0; i < 20; ++i) {
    const auto c = random_case(rng);
    const double beta_c = solve_beta_c(c.model, c.U, cfg);

    // Partials of g at a generic point.
    const double x = beta_c * (0.1 + 1.4 * unit(rng));
    const double t = 4.0 * kPi * unit(rng);
    const double z = 0.05 + 2.0 * unit(rng);
    const std::string where = c.label + " (" + fmt(x) + ", " + fmt(t) + ", " + fmt(z) + ")";
    auto G = [&](double xx, double tt, double zz) { return g(c.model, c.U, xx, tt, zz, cfg); };
    const double hx = 1e-5 * x;
    const double ht = 1e-5;
    const double hz = 1e-5 * z;
    check("dg_dx", dg_dx(c.model, c.U, x, t, z, cfg), (G(x + hx, t, z) - G(x - hx, t, z)) / (2.0 * hx), 1e-6, where);
    check("dg_dt", dg_dt(c.model, c.U, x, t, z, cfg), (G(x, t + ht, z) - G(x, t - ht, z)) / (2.0 * ht), 1e-6, where);
    check("dg_dz", dg_dz(c.model, c.U, x, t, z, cfg), (G(x, t, z + hz) - G(x, t, z - hz)) / (2.0 * hz), 1e-6, where);

    // The z = 0 density against Richardson-extrapolated 2 (g(z) - g(0)) / z^2.
    const double g0 = G(x, t, 0.0);
    auto quotient = [&](double zz) { return 2.0 * (G(x, t, zz) - g0) / (zz * zz); };
    const double z0 = 1e-2 * c.model.e_min();
    check("dg_dz_density", dg_dz(c.model, c.U, x, t, 0.0, cfg), (4.0 * quotient(0.5 * z0) - quotient(z0)) / 3.0, 1e-6,
          where);

    // tau' and tau'' against differences of the boundary root.
    const double beta = beta_c * (0.1 + 0.8 * unit(rng));
    const std::string at = c.label + " beta=" + fmt(beta);
    auto tau = [&](double bb) { return solve_tau(c.model, c.U, bb, cfg); };
    const double h1 = 1e-5 * beta;
    check("tau_prime", tau_prime(c.model, c.U, beta, cfg), (tau(beta + h1) - tau(beta - h1)) / (2.0 * h1), 1e-4, at);
    const double h2 = 1e-3 * beta;
    check("tau_second", tau_second(c.model, c.U, beta, cfg),
          (tau(beta + h2) - 2.0 * tau(beta) + tau(beta - h2)) / (h2 * h2), 1e-4, at);
  }
  cx.summary = "20 random points, worst error/tolerance ratio " + fmt(worst);
}

void suite_algebraic_constants(Context& cx) {
  const auto k = closedform::algebraic_constants();
  const double tol = 1e-12;
  cx.log.within("threshold_squared", std::abs(k.threshold * k.threshold - k.eta0), tol, "");
  cx.log.within("a0_times_threshold", std::abs(k.a0 * (3.0 - 2.0 * std::numbers::sqrt2) - 1.0), tol, "");
  cx.log.within("w_tilde_at_a0", std::abs(w_tilde(k.a0, -1.0, k.eta0) - k.threshold), tol, "");
  for (double z : {0.01, 0.2, 0.5, 0.9})
    cx.log.within("w_tilde_at_one", std::abs(w_tilde(1.0, -1.0, z)), tol, "z=" + fmt(z));
  cx.log.within("a_plus_at_eta0", std::abs(a_plus(k.eta0) - k.a0), tol, "");
  cx.log.within("a_minus_at_eta0", std::abs(a_minus(k.eta0) - k.a0), tol, "");
  cx.log.within("a_hat_at_eta0", std::abs(a_hat(k.eta0) - k.a0), tol, "");

  double prev_minus = -std::numeric_limits<double>::infinity();
  double prev_plus = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 100; ++i) {
    const double eta = k.eta0 * i / 101.0;
    const double lm = w_tilde(a_minus(eta), -1.0, eta);
    const double lp = w_tilde(a_plus(eta), -1.0, eta);
    cx.log.expect(lm > prev_minus, "w~(a_-) level not increasing at eta=" + fmt(eta));
    cx.log.expect(lp > prev_plus, "w~(a_+) level not increasing at eta=" + fmt(eta));
    prev_minus = lm;
    prev_plus = lp;
  }
  const double small = 1e-9;
  const double near = k.eta0 * (1.0 - 1e-9);
  cx.log.within("level_minus_limit_at_0", std::abs(w_tilde(a_minus(small), -1.0, small) - 0.125), 1e-3, "");
  cx.log.within("level_plus_limit_at_0", std::abs(w_tilde(a_plus(small), -1.0, small)), 1e-3, "");
  cx.log.within("level_minus_limit_at_eta0", std::abs(w_tilde(a_minus(near), -1.0, near) - k.threshold), 1e-3, "");
  cx.log.within("level_plus_limit_at_eta0", std::abs(w_tilde(a_plus(near), -1.0, near) - k.threshold), 1e-3, "");
  cx.summary = "identities to 1e-12, both levels increasing on 100 eta points";
}

void suite_order_parameters(Context& cx) {
  const SolverConfig cfg;
  const std::vector<RandomCase> models = {
      {DispersionModel::constant(1, 1.0), Coupling(-0.125), "constant b=1"},
      {two_level_model(7.0), Coupling(kTwoLevelU), "multi_orbital b=8"},
      {DispersionModel::cosine_1d(1.0, 1.0), Coupling(-0.125), "cosine_1d"},
  };
  double worst_trace = 0.0;
  double worst_odlro = 0.0;
  for (const auto& m : models) {
    const int b = m.model.orbitals();
    const double beta_c = solve_beta_c(m.model, m.U, cfg);
    // Disordered: beyond beta_c, or at t = pi.
    for (auto [beta, theta] : {std::pair{1.5 * beta_c, 2.0 * kPi / (1.5 * beta_c)},
                               std::pair{0.5 * beta_c, kPi / (0.5 * beta_c)}}) {
      const std::string where = m.label + " beta=" + fmt(beta);
      const auto op = odlro_and_density(m.model, m.U, beta, theta, 0, b - 1, cfg);
      cx.log.expect(op.regime == Regime::QMinus, where + ": expected a disordered point");
      cx.log.expect(op.odlro == 0.0 && op.cooper_density == 0.0, where + ": nonzero ODLRO or density");
      for (int rho = 0; rho < b; ++rho)
        cx.log.expect(ssb_order(m.model, m.U, beta, theta, rho, cfg) == 0.0, where + ": nonzero SSB");
    }
    // Ordered: t = 2 pi below beta_c, and t slightly above tau(beta).
    for (double frac : {0.3, 0.7}) {
      const double beta = frac * beta_c;
      const double tau = solve_tau(m.model, m.U, beta, cfg);
      for (double t : {2.0 * kPi, 0.5 * (tau + 2.0 * kPi)}) {
        const double theta = t / beta;
        const std::string where = m.label + " beta=" + fmt(beta) + " t=" + fmt(t);
        double sum = 0.0;
        for (int rho = 0; rho < b; ++rho) sum += orbital_weight(m.model, m.U, beta, theta, rho, cfg);
        const double err = std::abs(sum - 1.0 / m.U.magnitude());
        worst_trace = std::max(worst_trace, err);
        cx.log.within("trace_identity", err, 1e-9, where);
        const auto op = odlro_and_density(m.model, m.U, beta, theta, 0, 0, cfg);
        cx.log.expect(op.regime == Regime::QPlus && op.delta > 0.0, where + ": expected an ordered point");
        cx.log.expect(op.cooper_density == op.delta * op.delta / (m.U.value() * m.U.value()),
                      where + ": density differs from Delta^2/U^2");
        if (b == 1) {
          const double rel = std::abs(op.odlro - op.cooper_density) / op.cooper_density;
          worst_odlro = std::max(worst_odlro, rel);
          cx.log.within("odlro_vs_density", rel, 1e-9, where);
        }
      }
    }
  }
  cx.summary = "trace identity max error " + fmt(worst_trace) + ", single-orbital ODLRO vs Delta^2/U^2 " +
               fmt(worst_odlro);
}

void suite_bump_fractions(Context& cx) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  auto measure = [&](int d, std::size_t n, double s, double t) {
    const auto model = build_bump_dispersion(d, 1, {s, t}, 1.0, 3.0);
    const double tol = 2.0 * d / static_cast<double>(n);
    const std::string where = "d=" + std::to_string(d) + " s=" + fmt(s) + " t=" + fmt(t);
    const double inner = level_set_fraction(model, 3.0, n);
    const double outer = level_set_fraction(model, 1.0, n);
    worst = std::max({worst, std::abs(inner - s), std::abs(outer - (1.0 - t))});
    cx.log.within("plateau_fraction_error", std::abs(inner - s), tol, where);
    cx.log.within("floor_fraction_error", std::abs(outer - (1.0 - t)), tol, where);
  };
  for (int i = 0; i < 5; ++i) {
    const double s = 0.05 + 0.6 * unit(rng);
    const double t = s + (0.95 - s) * (0.2 + 0.8 * unit(rng));
    measure(1, std::size_t{1} << 20, s, t);
  }
  measure(2, 2048, 0.2, 0.6);
  cx.summary = "5 random (s, t) pairs in 1-D on 2^20 nodes plus one 2-D pair, max error " + fmt(worst);
}

void suite_config_model(Context& cx) {
  const RunConfig& cfg = *cx.options.config;
  const auto& model = cfg.require_model();
  const Coupling U = cfg.require_coupling();
  try {
    check_admissible(model, U);
  } catch (const AdmissibilityError& e) {
    cx.log.fail(std::string("admissibility: ") + e.what());
    cx.summary = "coupling is not admissible";
    return;
  }
  const double beta_c = solve_beta_c(model, U, cfg.solver);
  const double bound = bound_beta_c(model, U);
  cx.log.expect(beta_c <= bound + 1e-10, "beta_c above its bound");
  for (int i = 1; i <= 9; ++i) {
    const double beta = beta_c * i / 10.0;
    cx.log.expect(g(model, U, beta, kPi, 0.0, cfg.solver) < 0.0, "g(beta, pi, 0) not negative at beta=" + fmt(beta));
    cx.log.expect(g(model, U, beta, 2.0 * kPi, 0.0, cfg.solver) > 0.0,
                  "g(beta, 2 pi, 0) not positive at beta=" + fmt(beta));
  }
  GridSpec grid = cfg.tau_curve;
  grid.threads = cx.options.threads;
  const auto curve = trace_curve(model, U, grid, cfg.solver);
  for (const auto& s : curve.samples)
    cx.log.within("curve_residual", std::abs(s.residual), cfg.solver.root.abs_tol, "beta=" + fmt(s.beta));
  cx.log.expect(curve.minima_count() >= 1, "boundary curve has no local minimum");
  cx.log.note("beta_c", beta_c);
  cx.log.note("minima_count", curve.minima_count());
  cx.summary = model.kind_name() + ": beta_c " + fmt(beta_c) + ", " + std::to_string(curve.minima_count()) +
               " local minima";
}

struct Suite {
  int number;
  const char* name;
  void (*run)(Context&);
};

constexpr Suite kSuites[] = {
    {1, "two_level_minima", suite_two_level_minima},
    {2, "exact_tau", suite_exact_tau},
    {3, "cosine_integral", suite_cosine_integral},
    {4, "constant_identities", suite_constant_identities},
    {5, "convexity", suite_convexity},
    {6, "gap_equation", suite_gap_equation},
    {7, "beta_c_bound", suite_beta_c_bound},
    {8, "c1_jumps", suite_c1_jumps},
    {9, "analytic_derivatives", suite_analytic_derivatives},
    {10, "algebraic_constants", suite_algebraic_constants},
    {11, "order_parameters", suite_order_parameters},
    {12, "bump_fractions", suite_bump_fractions},
};
constexpr Suite kConfigSuite{0, "config_model", suite_config_model};

bool selected(const Suite& s, const std::string& filter) {
  return filter.empty() || filter == s.name || filter == std::to_string(s.number);
}

SuiteResult run_suite(const Suite& s, const VerifyOptions& options) {
  SuiteLog log;
  Context cx{options, log, ""};
  const auto start = std::chrono::steady_clock::now();
  try {
    s.run(cx);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    log.fail(std::string("exception: ") + e.what());
    if (cx.summary.empty()) cx.summary = "aborted";
  }
  SuiteResult r;
  r.number = s.number;
  r.name = s.name;
  r.passed = log.ok();
  r.checks = log.checks();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.summary = cx.summary;
  r.failures = log.take_failures();
  r.metrics = log.take_metrics();
  return r;
}

}  // namespace

std::vector<SuiteInfo> suite_catalog() {
  std::vector<SuiteInfo> out{{kConfigSuite.number, kConfigSuite.name}};
  for (const auto& s : kSuites) out.push_back({s.number, s.name});
  return out;
}

std::vector<SuiteResult> run_verify(const VerifyOptions& options) {
  std::vector<const Suite*> chosen;
  if (options.config && selected(kConfigSuite, options.filter)) chosen.push_back(&kConfigSuite);
  for (const auto& s : kSuites)
    if (selected(s, options.filter)) chosen.push_back(&s);
  if (chosen.empty()) {
    if (options.filter == kConfigSuite.name || options.filter == "0")
      throw ConfigError("the config_model suite needs --config");
    throw ConfigError("no verification suite matches \"" + options.filter + "\"");
  }
  std::vector<SuiteResult> results;
  for (const Suite* s : chosen) results.push_back(run_suite(*s, options));
  return results;
}

json verify_report(const std::vector<SuiteResult>& results) {
  json suites = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    suites.push_back({{"number", r.number},
                      {"name", r.name},
                      {"passed", r.passed},
                      {"checks", r.checks},
                      {"seconds", r.seconds},
                      {"summary", r.summary},
                      {"failures", r.failures},
                      {"metrics", r.metrics}});
  }
  return {{"passed", all}, {"suites", suites}};
}

std::string result_line(const SuiteResult& r) {
  std::string line = "criterion " + std::to_string(r.number) + " " + r.name + ": " + (r.passed ? "PASS" : "FAIL") +
                     " (" + std::to_string(r.checks) + " checks, " + fmt(r.seconds) + " s) " + r.summary;
  if (!r.failures.empty()) line += "; first failure: " + r.failures.front();
  return line;
}

}  // namespace bcs::app
