#include <doctest.h>

#include <cmath>
#include <vector>

#include "bcs/dispersion.hpp"
#include "bcs/errors.hpp"
#include "oracles.hpp"

using namespace bcs;

TEST_CASE("constant and multi-orbital eigenvalues do not depend on k") {
  const auto c = DispersionModel::constant(3, 1.5);
  const std::vector<double> k{0.7};
  CHECK(c.eigenvalues(k) == std::vector<double>{1.5, 1.5, 1.5});
  CHECK(c.is_k_independent());

  const auto m = DispersionModel::multi_orbital(4, 3, 1.0, 7.0);
  const auto ev = m.eigenvalues(k);
  REQUIRE(ev.size() == 4);
  CHECK(ev[0] == 7.0);
  CHECK(ev[2] == 7.0);
  CHECK(ev[3] == 1.0);
  CHECK(m.e_min() == 1.0);
  CHECK(m.e_max() == 7.0);
}

TEST_CASE("cosine band spans [e_min, 2 t + e_min]") {
  const auto m = DispersionModel::cosine_1d(1.3, 0.4);
  CHECK(m.eigenvalues(std::vector<double>{0.0})[0] == doctest::Approx(2.0 * 1.3 + 0.4).epsilon(1e-15));
  CHECK(m.eigenvalues(std::vector<double>{oracle::kPi})[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(m.e_min() == 0.4);
  CHECK(m.e_max() == doctest::Approx(3.0));
  CHECK_FALSE(m.is_k_independent());
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(DispersionModel::constant(0, 1.0), DomainError);
  CHECK_THROWS_AS(DispersionModel::constant(1, 0.0), DomainError);
  CHECK_THROWS_AS(DispersionModel::multi_orbital(3, 3, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(DispersionModel::multi_orbital(3, 1, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(DispersionModel::cosine_1d(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(build_bump_dispersion(1, 1, {0.6, 0.4}, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(build_bump_dispersion(1, 1, {0.2, 0.4}, 2.0, 2.0), DomainError);
  CHECK_THROWS_AS(BZGeometry::from_basis(2, {1.0, 2.0, 2.0, 4.0}), DomainError);
  CHECK_THROWS_AS(DispersionModel::constant(1, 1.0).eigenvalues(std::vector<double>{0.1, 0.2}), DomainError);
}

TEST_CASE("normalization is 1 / (|det V| (2 pi)^d)") {
  const double two_pi = 2.0 * oracle::kPi;
  CHECK(BZGeometry::canonical(2).normalization() == doctest::Approx(1.0 / (two_pi * two_pi)).epsilon(1e-15));
  // Columns (2, 0) and (1, 3): determinant 6.
  const auto g = BZGeometry::from_basis(2, {2.0, 1.0, 0.0, 3.0});
  CHECK(g.normalization() == doctest::Approx(1.0 / (6.0 * two_pi * two_pi)).epsilon(1e-14));
  CHECK(g.recompute_normalization() == doctest::Approx(g.normalization()).epsilon(1e-15));
  const auto kappa = g.dual_coordinates(std::vector<double>{2.0 * 0.5 + 1.0 * 0.25, 3.0 * 0.25});
  CHECK(kappa[0] == doctest::Approx(0.5));
  CHECK(kappa[1] == doctest::Approx(0.25));
}

TEST_CASE("plateau profile is 1 on the inner interval and 0 outside the outer one") {
  const double inner = 0.5;
  const double outer = 1.5;
  CHECK(plateau_profile(oracle::kPi, inner, outer) == 1.0);
  CHECK(plateau_profile(oracle::kPi + 0.49, inner, outer) == 1.0);
  CHECK(plateau_profile(oracle::kPi - 1.51, inner, outer) == 0.0);
  CHECK(plateau_profile(0.0, inner, outer) == 0.0);
  CHECK(plateau_profile(oracle::kPi + 2.0 * oracle::kPi, inner, outer) == 1.0);
  double prev = 1.0;
  for (int i = 1; i < 100; ++i) {
    const double v = plateau_profile(oracle::kPi + inner + (outer - inner) * i / 100.0, inner, outer);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
}

TEST_CASE("bump dispersion stays within [e_min, e_max] and reaches both") {
  const auto m = build_bump_dispersion(2, 2, {0.2, 0.5}, 1.0, 3.0);
  const auto b = verify_bounds(m, 64 * 64);
  CHECK(b.min >= 1.0);
  CHECK(b.max <= 3.0);
  CHECK(b.min == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.max == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("bump level sets have the requested measure") {
  const auto m = build_bump_dispersion(1, 1, {0.25, 0.5}, 1.0, 2.0);
  const std::size_t n = std::size_t{1} << 16;
  CHECK(std::abs(level_set_fraction(m, 2.0, n) - 0.25) <= 2.0 / n);
  CHECK(std::abs(level_set_fraction(m, 1.0, n) - 0.5) <= 2.0 / n);
  const auto m2 = build_bump_dispersion(2, 1, {0.3, 0.7}, 1.0, 2.0);
  CHECK(std::abs(level_set_fraction(m2, 2.0, 1024) - 0.3) <= 4.0 / 1024);
  CHECK(std::abs(level_set_fraction(m2, 1.0, 1024) - 0.3) <= 4.0 / 1024);
}
