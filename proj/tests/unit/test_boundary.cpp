#include <doctest.h>

#include <cmath>

#include "bcs/boundary.hpp"
#include "bcs/closedform.hpp"
#include "oracles.hpp"

using namespace bcs;
using oracle::kPi;

namespace {

const Coupling kU(-0.125);
const auto kConst = DispersionModel::constant(1, 1.0);

DispersionModel two_level(double e_max) { return DispersionModel::multi_orbital(8, 7, 1.0, e_max); }

}  // namespace

TEST_CASE("tau' of a constant band matches the differentiated closed form") {
  const double a = 0.125 / 2.0;  // |U| b / (2 e)
  const double bc = solve_beta_c(kConst, kU);
  for (double f : {0.1, 0.4, 0.8}) {
    const double beta = f * bc;
    const double y = a * std::sinh(beta) - std::cosh(beta);
    const double dy = a * std::cosh(beta) - std::sinh(beta);
    CHECK(tau_prime(kConst, kU, beta) == doctest::Approx(-2.0 * dy / std::sqrt(1.0 - y * y)).epsilon(1e-8));
  }
}

TEST_CASE("tau' blows up at both ends") {
  const auto m = two_level(7.0);
  const double bc = solve_beta_c(m, kU);
  CHECK(tau_prime(m, kU, 0.999 * bc) > 10.0);
  CHECK(tau_prime(m, kU, 0.001 * bc) < -10.0);
}

TEST_CASE("tau'' matches a second difference of the boundary root") {
  const auto m = two_level(7.0);
  const double bc = solve_beta_c(m, kU);
  for (double f : {0.2, 0.5, 0.8}) {
    const double beta = f * bc;
    const double h = 1e-3 * beta;
    const double fd = (solve_tau(m, kU, beta + h) - 2.0 * solve_tau(m, kU, beta) + solve_tau(m, kU, beta - h)) / (h * h);
    CHECK(tau_second(m, kU, beta) == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("beta grid layout") {
  GridSpec spec;
  spec.core_points = 10;
  spec.decade_points = 4;
  spec.decades = 2;
  const auto grid = beta_grid(2.0, spec);
  CHECK(grid.size() == 10 + 2 * 8);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
  CHECK(grid.front() == doctest::Approx(2.0e-3));
  CHECK(grid.back() < 2.0);
  spec.core_points = 0;
  spec.decades = 0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
}

TEST_CASE("two-level curves for e_max = 6, 7, 9 have 1, 2 and 1 local minima") {
  const int expected[] = {1, 2, 1};
  const double e_max[] = {6.0, 7.0, 9.0};
  for (int i = 0; i < 3; ++i) {
    GridSpec spec;
    spec.second_derivative = true;
    const auto m = two_level(e_max[i]);
    const auto curve = trace_curve(m, kU, spec);
    CHECK(curve.minima_count() == expected[i]);
    CHECK(curve.ambiguous.empty());
    for (const auto& s : curve.samples) {
      CHECK(std::abs(s.residual) <= 1e-10);
      CHECK(s.tau > kPi);
      CHECK(s.tau < 2.0 * kPi);
      REQUIRE(s.tau_second.has_value());
    }
    CHECK(curve.samples.front().tau_prime < 0.0);
    CHECK(curve.samples.back().tau_prime > 0.0);
    for (const auto& mn : curve.local_minima) {
      CHECK(mn.refined);
      CHECK(mn.tau_second >= 0.0);
      CHECK(std::abs(tau_prime(m, kU, mn.beta)) < 1e-8);
    }
    // tau' and g_x have opposite signs.
    for (std::size_t j = 0; j < curve.samples.size(); j += 97) {
      const auto p = tau_point(m, kU, curve.samples[j].beta);
      CHECK((p.tau_prime > 0.0) == (p.g_x < 0.0));
    }
  }
}

TEST_CASE("exact two-level boundary matches the numeric root") {
  const auto m = two_level(7.0);
  const double bc = solve_beta_c(m, kU);
  const auto check = multiorbital_exact_tau_check(8, 7, 1.0, 7.0, kU, 0.5 * bc);
  CHECK(check.tau == doctest::Approx(solve_tau(m, kU, 0.5 * bc)).epsilon(1e-9));
  CHECK(std::abs(check.residual) < 1e-9);
  CHECK_THROWS_AS(multiorbital_exact_tau_check(8, 7, 1.0, 7.0, kU, 1.2 * bc), DomainError);
}

TEST_CASE("shape functions at the critical constants") {
  const auto k = closedform::algebraic_constants();
  CHECK(w_tilde(k.a0, -1.0, k.eta0) == doctest::Approx(k.threshold).epsilon(1e-12));
  CHECK(w_tilde(1.0, -1.0, 0.3) == 0.0);
  CHECK(a_plus(k.eta0) == doctest::Approx(k.a0).epsilon(1e-12));
  CHECK(a_minus(k.eta0) == doctest::Approx(k.a0).epsilon(1e-12));
  CHECK(a_hat(k.eta0) == doctest::Approx(k.a0).epsilon(1e-12));
  CHECK(a_plus(0.01) * a_minus(0.01) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK_THROWS_AS(w_tilde(2.0, -1.0, 0.6), DomainError);
  CHECK_THROWS_AS(a_plus(0.5), DomainError);
}

TEST_CASE("w~ agrees with its cosh form away from y = -1") {
  auto cosh_form = [](double x, double y, double z) {
    auto C = [&](double a) { return std::cosh(std::sqrt(2.0 * a * (y + 1.0))); };
    return -(1.0 + y * C(x)) * (y + C(z * x)) * (y + C(z * x)) / ((1.0 + y * C(z * x)) * (y + C(x)) * (y + C(x)));
  };
  CHECK(w_tilde(0.7, 0.5, 0.4) == doctest::Approx(cosh_form(0.7, 0.5, 0.4)).epsilon(1e-12));
  CHECK(w_tilde(2.0, -0.3, 0.1) == doctest::Approx(cosh_form(2.0, -0.3, 0.1)).epsilon(1e-12));
  CHECK(w_tilde(0.5, -1.0 + 1e-9, 0.3) == doctest::Approx(w_tilde(0.5, -1.0, 0.3)).epsilon(1e-7));
  CHECK(big_w(1.0, 0.5, 0.4, 2.0) ==
        doctest::Approx(std::sinh(1.0) / (0.5 + std::cosh(1.0)) + 2.0 * std::sinh(0.4) / ((0.5 + std::cosh(0.4)) * 0.4)));
}

TEST_CASE("shape classification of diagonal models") {
  CHECK(classify_shape(two_level(7.0)).prediction == ShapePrediction::MultipleMinima);
  CHECK(classify_shape(two_level(6.0)).prediction == ShapePrediction::SingleMinimum);
  CHECK(classify_shape(two_level(9.0)).prediction == ShapePrediction::SingleMinimum);
  CHECK(classify_shape(two_level(7.0)).threshold_side == ThresholdSide::Below);
  // (b - b') / b' = 1/3 is above 3 - 2 sqrt 2.
  CHECK(classify_shape(DispersionModel::multi_orbital(4, 3, 1.0, 7.0)).prediction == ShapePrediction::SingleMinimum);
  const auto flat = classify_shape(kConst, Coupling(-0.05));
  CHECK(flat.threshold_side == ThresholdSide::Above);
  CHECK(flat.convexity_certified);
  CHECK_FALSE(classify_shape(kConst, Coupling(-0.5)).convexity_certified);
  CHECK_THROWS_AS(classify_shape(DispersionModel::cosine_1d(1.0, 1.0)), DomainError);
}
