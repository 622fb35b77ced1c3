#include <doctest.h>

#include <cmath>
#include <span>

#include "bcs/bzquad.hpp"
#include "bcs/errors.hpp"
#include "oracles.hpp"

using namespace bcs;

TEST_CASE("k-independent models are summed exactly over eigenvalues") {
  const auto m = DispersionModel::multi_orbital(5, 2, 1.0, 3.0);
  const double v = trace_integral(m, [](double l) { return l * l; });
  CHECK(v == doctest::Approx(2 * 9.0 + 3 * 1.0).epsilon(1e-15));
  CHECK(orbital_integral(m, 0, [](double l) { return l; }) == doctest::Approx(3.0));
  CHECK(orbital_integral(m, 4, [](double l) { return l; }) == doctest::Approx(1.0));
  CHECK_THROWS_AS(orbital_integral(m, 5, [](double l) { return l; }), DomainError);
}

TEST_CASE("cosine band moments match their exact values") {
  const double t = 1.7;
  const double e = 0.6;
  const auto m = DispersionModel::cosine_1d(t, e);
  CHECK(trace_integral(m, [](double l) { return l; }) == doctest::Approx(t + e).epsilon(1e-14));
  CHECK(trace_integral(m, [](double l) { return l * l; }) ==
        doctest::Approx(0.5 * t * t + (t + e) * (t + e)).epsilon(1e-14));
}

TEST_CASE("smooth integrands agree with an independent fine trapezoid") {
  const auto m = DispersionModel::cosine_1d(2.0, 0.5);
  auto f = [](double l) { return std::tanh(3.0 * l) / l; };
  const double ref = oracle::periodic_mean([&](double k) { return f(2.0 * (std::cos(k) + 1.0) + 0.5); }, 1 << 14);
  CHECK(trace_integral(m, f) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("several integrands share one grid") {
  const auto m = DispersionModel::cosine_1d(1.0, 1.0);
  const auto v = trace_integrals(m, 2, [](double l, std::span<double> out) {
    out[0] = 1.0;
    out[1] = l;
  });
  CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v[1] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("two-dimensional bump integrals include the normalization") {
  const auto m = build_bump_dispersion(2, 2, {0.2, 0.5}, 1.0, 3.0);
  CHECK(trace_integral(m, [](double) { return 1.0; }) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(trace_sum_fixed(m, [](double) { return 1.0; }, 8) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("non-convergence raises QuadratureError with both estimates") {
  const auto m = DispersionModel::cosine_1d(1.0, 1.0);
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-14;
  cfg.max_doublings = 2;
  try {
    trace_integral(m, [](double l) { return std::abs(l - 2.0); }, cfg);
    FAIL("expected a QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.previous_estimate() != e.last_estimate());
  }
  cfg.base_points_per_dim = 2;
  CHECK_THROWS_AS(trace_integral(m, [](double l) { return l; }, cfg), DomainError);
}
