#include <doctest.h>

#include <cmath>
#include <random>

#include "bcs/gapcore.hpp"
#include "oracles.hpp"

using namespace bcs;
using oracle::kPi;

namespace {

const Coupling kU(-0.125);
const auto kConst = DispersionModel::constant(1, 1.0);
const auto kTwoLevel7 = DispersionModel::multi_orbital(8, 7, 1.0, 7.0);
const auto kCos = DispersionModel::cosine_1d(1.0, 1.0);

}  // namespace

TEST_CASE("Coupling accepts only finite negative values") {
  CHECK_THROWS_AS(Coupling(0.0), DomainError);
  CHECK_THROWS_AS(Coupling(0.1), DomainError);
  CHECK_THROWS_AS(Coupling(-INFINITY), DomainError);
  CHECK(Coupling(-0.3).magnitude() == 0.3);
}

TEST_CASE("single constant band at t = 2 pi reduces to coth(beta / 2) - 16") {
  for (double beta : {0.05, 0.12, 0.5, 2.0})
    CHECK(g(kConst, kU, beta, 2.0 * kPi, 0.0) == doctest::Approx(1.0 / std::tanh(0.5 * beta) - 16.0).epsilon(1e-13));
}

TEST_CASE("g agrees with a directly summed cosine-band integral") {
  const double x = 0.7, t = 5.1, z = 0.4;
  const double ref = -16.0 + oracle::periodic_mean([&](double k) { return oracle::kernel_h(std::cos(k) + 2.0, x, t, z); }, 4096);
  CHECK(g(kCos, kU, x, t, z) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("g limits and symmetries") {
  CHECK(g(kTwoLevel7, kU, 0.001, kPi, 0.0) < 0.0);
  CHECK(g(kConst, kU, 1.0, 2.0 * kPi, 1e6) < -16.0 + 1e-4);
  for (double t : {0.3, 2.0, 4.5, 6.0}) {
    const double base = g(kCos, kU, 0.8, t, 0.2);
    CHECK(std::abs(g(kCos, kU, 0.8, 4.0 * kPi - t, 0.2) - base) < 1e-13);
    CHECK(std::abs(g(kCos, kU, 0.8, t + 4.0 * kPi, 0.2) - base) < 1e-13);
  }
}

TEST_CASE("z -> g is strictly decreasing") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double x = 0.01 + u(rng);
    const double t = 4.0 * kPi * u(rng);
    double prev = g(kTwoLevel7, kU, x, t, 0.0);
    for (int j = 1; j <= 10; ++j) {
      const double cur = g(kTwoLevel7, kU, x, t, 0.3 * j);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("analytic partials match central differences") {
  const double x = 1.0, t = 5.0, z = 0.3;
  auto gx = [&](double v) { return g(kConst, kU, v, t, z); };
  auto gt = [&](double v) { return g(kConst, kU, x, v, z); };
  auto gz = [&](double v) { return g(kConst, kU, x, t, v); };
  CHECK(dg_dx(kConst, kU, x, t, z) == doctest::Approx(oracle::central(gx, x, 1e-5)).epsilon(1e-6));
  CHECK(dg_dt(kConst, kU, x, t, z) == doctest::Approx(oracle::central(gt, t, 1e-5)).epsilon(1e-6));
  CHECK(dg_dz(kConst, kU, x, t, z) == doctest::Approx(oracle::central(gz, z, 1e-5)).epsilon(1e-6));

  const auto p = gap_partials(kCos, kU, 0.9, 4.0, 0.2);
  CHECK(p.g == doctest::Approx(g(kCos, kU, 0.9, 4.0, 0.2)).epsilon(1e-14));
  auto cx = [&](double v) { return dg_dx(kCos, kU, v, 4.0, 0.2); };
  auto ct = [&](double v) { return dg_dt(kCos, kU, 0.9, v, 0.2); };
  CHECK(p.dxx == doctest::Approx(oracle::central(cx, 0.9, 1e-5)).epsilon(1e-6));
  auto tx = [&](double v) { return dg_dt(kCos, kU, v, 4.0, 0.2); };
  CHECK(p.dxt == doctest::Approx(oracle::central(tx, 0.9, 1e-5)).epsilon(1e-6));
  CHECK(p.dtt == doctest::Approx(oracle::central(ct, 4.0, 1e-5)).epsilon(1e-6));
}

TEST_CASE("t derivative vanishes at 2 pi and is positive on (pi, 2 pi)") {
  // The double nearest 2 pi has sin(t / 2) = 1.2e-16; dg/dt carries exactly that factor.
  const double at = dg_dt(kTwoLevel7, kU, 0.05, 2.0 * kPi, 0.0);
  CHECK(std::abs(at) < 1e-11);
  const double t1 = 2.0 * kPi - 1e-6;
  CHECK(at / std::sin(kPi) == doctest::Approx(dg_dt(kTwoLevel7, kU, 0.05, t1, 0.0) / std::sin(0.5 * t1)).epsilon(1e-6));
  for (double t : {3.3, 4.0, 5.0, 6.0}) CHECK(dg_dt(kCos, kU, 0.03, t, 0.0) > 0.0);
}

TEST_CASE("z = 0 density is the limit of (dg/dz) / z") {
  const double density = dg_dz(kCos, kU, 0.7, 5.5, 0.0);
  CHECK(density < 0.0);
  CHECK(dg_dz(kCos, kU, 0.7, 5.5, 0.0, {}, true) == 0.0);
  const double z = 1e-4;
  CHECK(dg_dz(kCos, kU, 0.7, 5.5, z) / z == doctest::Approx(density).epsilon(1e-7));
  CHECK(dg_dz_density(kCos, 0.7, 5.5, 0.0) == doctest::Approx(density).epsilon(1e-15));
}

TEST_CASE("constant-band gap matches a scalar bisection oracle") {
  const double beta = 0.06;
  // sinh(beta s) / ((cosh(beta s) - 1) s) = 16 with s = sqrt(1 + Delta^2).
  const double s = oracle::bisect([&](double v) { return std::sinh(beta * v) / ((std::cosh(beta * v) - 1.0) * v) - 16.0; }, 1.0, 100.0);
  const auto r = solve_delta(kConst, kU, beta, 2.0 * kPi);
  CHECK(r.regime == Regime::QPlus);
  CHECK(r.delta == doctest::Approx(std::sqrt(s * s - 1.0)).epsilon(1e-9));
  CHECK(std::abs(g(kConst, kU, beta, 2.0 * kPi, r.delta)) <= 1e-10);
}

TEST_CASE("regime classification") {
  CHECK(solve_delta(kTwoLevel7, kU, 0.05, kPi).regime == Regime::QMinus);
  CHECK(solve_delta(kTwoLevel7, kU, 0.05, kPi).delta == 0.0);
  const double bc = solve_beta_c(kConst, kU);
  const auto at = solve_delta(kConst, kU, bc, 2.0 * kPi);
  CHECK(at.regime == Regime::QZero);
  CHECK(at.delta == 0.0);
  CHECK(regime_name(Regime::QPlus) == "QPlus");
}

TEST_CASE("critical temperature") {
  CHECK(solve_beta_c(kConst, kU) == doctest::Approx(std::log(17.0 / 15.0)).epsilon(1e-13));
  const double bc = solve_beta_c(kTwoLevel7, kU);
  CHECK(std::abs(g(kTwoLevel7, kU, bc, 2.0 * kPi, 0.0)) < 1e-10);
  CHECK(bc <= 2.0 * std::atanh(0.5) + 1e-10);
  CHECK(beta_c_upper_bound(kTwoLevel7, kU) == doctest::Approx(2.0 * std::atanh(0.5)).epsilon(1e-15));
  double prev = 0.0;
  for (double u : {0.01, 0.05, 0.1, 0.2}) {
    const double b = solve_beta_c(kCos, Coupling(-u));
    CHECK(b > prev);
    prev = b;
  }
  CHECK_THROWS_AS(solve_beta_c(kConst, Coupling(-3.0)), AdmissibilityError);
  CHECK_THROWS_AS(check_admissible(kTwoLevel7, Coupling(-0.25)), AdmissibilityError);
}

TEST_CASE("boundary root tau(beta)") {
  const double bc = solve_beta_c(kTwoLevel7, kU);
  const double tau = solve_tau(kTwoLevel7, kU, 0.5 * bc);
  CHECK(tau > kPi);
  CHECK(tau < 2.0 * kPi);
  CHECK(std::abs(g(kTwoLevel7, kU, 0.5 * bc, tau, 0.0)) <= 1e-10);
  CHECK(solve_tau(kTwoLevel7, kU, 0.999 * bc) > 2.0 * kPi - 0.1);
  CHECK(solve_tau(kTwoLevel7, kU, 0.001 * bc) > 2.0 * kPi - 0.5);
  CHECK_THROWS_AS(solve_tau(kTwoLevel7, kU, 1.01 * bc), DomainError);
}

TEST_CASE("canonical time representative") {
  CHECK(canonical_time(2.0 * kPi).t_hat == doctest::Approx(2.0 * kPi));
  CHECK(canonical_time(4.0 * kPi - 0.3).t_hat == doctest::Approx(0.3));
  CHECK(canonical_time(6.0 * kPi).t_hat == doctest::Approx(2.0 * kPi));
  for (double t : {-7.0, 1.0, 9.0, 30.0}) {
    const double th = canonical_time(t).t_hat;
    CHECK(th >= 0.0);
    CHECK(th <= 2.0 * kPi);
    CHECK(std::cos(0.5 * th) == doctest::Approx(std::cos(0.5 * t)).epsilon(1e-12));
  }
}

TEST_CASE("solver settings are validated") {
  SolverConfig cfg;
  cfg.root.abs_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK_THROWS_AS(g(kConst, kU, 0.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(g(kConst, kU, 1.0, 1.0, -1.0), DomainError);
}
