#include "bcs/closedform.hpp"

#include <cmath>
#include <numbers>

namespace bcs::closedform {

AlgebraicConstants algebraic_constants() {
  const double a0 = 3.0 + 2.0 * std::numbers::sqrt2;
  const double threshold = 1.0 / a0;
  return {threshold * threshold, a0, threshold};
}

double cosine_integral_closed(double x, double t_hop) {
  if (!(x >= 0.0) || !(t_hop >= 0.0))
    throw DomainError("cosine integral requires x >= 0 and t >= 0");
  const double w = 2.0 * t_hop + 1.0;
  const double p = std::sqrt(w * w * x + 1.0);
  const double q = std::sqrt(x + 1.0);
  const double inner = std::sqrt(q * p + w * x + 1.0);
  return (p + q) / (std::numbers::sqrt2 * q * p * inner);
}

namespace {

void require_admissible(int b, double e, Coupling U) {
  if (b < 1 || !(e > 0.0)) throw DomainError("constant model requires b >= 1 and e > 0");
  if (!(U.magnitude() < 2.0 * e / b))
    throw AdmissibilityError("coupling must satisfy |U| < 2 e / b");
}

}  // namespace

double constant_model_beta_c(int b, double e, Coupling U) {
  require_admissible(b, e, U);
  const double r = b * U.magnitude() / (2.0 * e);
  // artanh(r) = log1p(2 r / (1 - r)) / 2
  return (2.0 / e) * 0.5 * std::log1p(2.0 * r / (1.0 - r));
}

double constant_model_tau(int b, double e, Coupling U, double beta) {
  require_admissible(b, e, U);
  const double beta_c = constant_model_beta_c(b, e, U);
  if (!(beta > 0.0 && beta < beta_c)) throw DomainError("beta must lie in (0, beta_c)");
  const double a = U.magnitude() * b / (2.0 * e);
  const double y = a * std::sinh(beta * e) - std::cosh(beta * e);
  return 2.0 * std::acos(y);
}

double constant_model_tau_prime(int b, double e, Coupling U, double beta) {
  require_admissible(b, e, U);
  const double a = U.magnitude() * b / (2.0 * e);
  const double y = a * std::sinh(beta * e) - std::cosh(beta * e);
  const double dy = e * (a * std::cosh(beta * e) - std::sinh(beta * e));
  return -2.0 * dy / std::sqrt((1.0 - y) * (1.0 + y));
}

MultiOrbitalQuadratic multiorbital_quadratic(int b, int b_prime, double e_min, double e_max,
                                             Coupling U, double beta) {
  if (b < 2 || b_prime < 1 || b_prime >= b) throw DomainError("need b >= 2 and 1 <= b' < b");
  if (!(e_min > 0.0 && e_max >= e_min)) throw DomainError("need 0 < e_min <= e_max");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  const double u = U.magnitude();
  const double ch_max = std::cosh(beta * e_max);
  const double ch_min = std::cosh(beta * e_min);
  const double sh_max = std::sinh(beta * e_max);
  const double sh_min = std::sinh(beta * e_min);
  MultiOrbitalQuadratic q{};
  q.d0 = ch_max * ch_min -
         0.5 * u * (b_prime / e_max * sh_max * ch_min + (b - b_prime) / e_min * ch_max * sh_min);
  q.d1 = ch_max + ch_min - 0.5 * u * (b_prime / e_max * sh_max + (b - b_prime) / e_min * sh_min);
  q.discriminant = q.d1 * q.d1 - 4.0 * q.d0;
  q.x1 = ch_max;
  q.x2 = ch_min;
  q.y1 = u * b_prime / (2.0 * e_max) * sh_max;
  q.y2 = u * (b - b_prime) / (2.0 * e_min) * sh_min;
  return q;
}

double multiorbital_cos_half_tau(const MultiOrbitalQuadratic& q) {
  if (!(q.discriminant > 0.0)) throw DomainError("multi-orbital discriminant is not positive");
  const double root = std::sqrt(q.discriminant);
  // y+ = (-D1 + root) / 2 = -2 D0 / (D1 + root) when D1 > 0.
  if (q.d1 > 0.0) return -2.0 * q.d0 / (q.d1 + root);
  return 0.5 * (-q.d1 + root);
}

}  // namespace bcs::closedform
