#pragma once

#include "bcs/params.hpp"

namespace bcs::closedform {

/// eta0 = 17 - 12 sqrt 2, a0 = 3 + 2 sqrt 2 and the ratio threshold
/// 3 - 2 sqrt 2 = sqrt(eta0) = 1 / a0.
struct AlgebraicConstants {
  double eta0;
  double a0;
  double threshold;
};

/// Evaluated as threshold = 1 / a0, eta0 = threshold^2 to avoid the
/// cancellation in 17 - 12 sqrt 2.
AlgebraicConstants algebraic_constants();

/// (1 / 2 pi) \int_0^{2 pi} dk / (1 + x (t (cos k + 1) + 1)^2) in closed form.
double cosine_integral_closed(double x, double t_hop);

/// Constant dispersion E = e I_b: beta_c = (2 / e) artanh(b |U| / (2 e)).
double constant_model_beta_c(int b, double e, Coupling U);

/// Constant dispersion: tau = 2 arccos((|U| b / 2e) sinh(beta e) - cosh(beta e)).
double constant_model_tau(int b, double e, Coupling U, double beta);

/// Derivative of constant_model_tau with respect to beta.
double constant_model_tau_prime(int b, double e, Coupling U, double beta);

/// Coefficients of y^2 + D1 y + D0 = 0 whose root in (-1, 0) is cos(tau/2)
/// for the two-level multi-orbital model.
struct MultiOrbitalQuadratic {
  double d0;
  double d1;
  double discriminant;
  double x1;
  double x2;
  double y1;
  double y2;
};

MultiOrbitalQuadratic multiorbital_quadratic(int b, int b_prime, double e_min, double e_max,
                                             Coupling U, double beta);

/// Larger root y_+ of the quadratic, computed without cancellation.
double multiorbital_cos_half_tau(const MultiOrbitalQuadratic& q);

}  // namespace bcs::closedform
