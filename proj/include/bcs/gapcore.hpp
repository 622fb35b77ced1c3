#pragma once

#include <string_view>

#include "bcs/bzquad.hpp"
#include "bcs/dispersion.hpp"
#include "bcs/params.hpp"

namespace bcs {

struct RootConfig {
  /// Required |g| at an accepted root.
  double abs_tol = 1e-10;
  int max_iter = 300;
  /// |g(beta, t, 0)| at or below this is classified as the transition set.
  double classification_tol = 1e-8;
  /// Relative bracket width at which the root search stops.
  double x_rel_tol = 8e-16;

  void validate() const;
};

struct SolverConfig {
  QuadratureConfig quad;
  RootConfig root;

  void validate() const;
};

enum class Regime { QPlus, QZero, QMinus };

std::string_view regime_name(Regime r);

struct GapResult {
  double delta = 0.0;
  Regime regime = Regime::QMinus;
  double residual = 0.0;
  int iterations = 0;
};

/// g(x, t, z) = -2/|U| + D_d \int Tr sinh(x s) / ((cos(t/2) + cosh(x s)) s),
/// s = sqrt(E^2 + z^2).
double g(const DispersionModel& model, Coupling U, double x, double t, double z,
         const SolverConfig& cfg = {});

double dg_dx(const DispersionModel& model, Coupling U, double x, double t, double z,
             const SolverConfig& cfg = {});
double dg_dt(const DispersionModel& model, Coupling U, double x, double t, double z,
             const SolverConfig& cfg = {});

/// dg/dz. At z = 0 the raw derivative vanishes; unless `raw` is set the
/// limit (1/z) dg/dz is returned there instead.
double dg_dz(const DispersionModel& model, Coupling U, double x, double t, double z,
             const SolverConfig& cfg = {}, bool raw = false);

/// (1/z) dg/dz, including its finite limit at z = 0. Always negative.
double dg_dz_density(const DispersionModel& model, double x, double t, double z,
                     const SolverConfig& cfg = {});

/// g and all partial derivatives used by the boundary and free-energy code,
/// computed on one shared quadrature grid.
struct GapPartials {
  double g;
  double dx;
  double dt;
  double dz_density;
  double dxx;
  double dxt;
  double dtt;
};

GapPartials gap_partials(const DispersionModel& model, Coupling U, double x, double t, double z,
                         const SolverConfig& cfg = {});

/// Throws AdmissibilityError unless |U| < 2 e_min / b.
void check_admissible(const DispersionModel& model, Coupling U);

/// Upper bound (2 / e_min) artanh(b |U| / (2 e_min)) on beta_c.
double beta_c_upper_bound(const DispersionModel& model, Coupling U);

GapResult solve_delta(const DispersionModel& model, Coupling U, double beta, double t,
                      const SolverConfig& cfg = {});

/// Unique root of beta -> g(beta, 2 pi, 0).
double solve_beta_c(const DispersionModel& model, Coupling U, const SolverConfig& cfg = {});

/// Unique t in (pi, 2 pi) with g(beta, t, 0) = 0, for beta in (0, beta_c).
double solve_tau(const DispersionModel& model, Coupling U, double beta,
                 const SolverConfig& cfg = {});

struct CanonicalTime {
  /// Representative in [0, 2 pi] with the same cos(t/2).
  double t_hat;
  /// floor(t / 4 pi).
  long long periods;
  /// True when t mod 4 pi lies in (2 pi, 4 pi) and was mirrored about 2 pi.
  bool reflected;
};

CanonicalTime canonical_time(double t);

}  // namespace bcs
