#pragma once

#include "bcs/gapcore.hpp"

namespace bcs {

/// F(beta, t) = Delta^2/|U| - (1/beta) D_d \int Tr log(2 cos(t/2) e^{-beta E}
///   + e^{beta(s - E)} + e^{-beta(s + E)}), s = sqrt(E^2 + Delta^2),
/// with Delta = Delta(beta, t) from solve_delta.
double free_energy(const DispersionModel& model, Coupling U, double beta, double t,
                   const SolverConfig& cfg = {});

/// Same, at a prescribed gap value instead of the self-consistent one.
double free_energy_at(const DispersionModel& model, Coupling U, double beta, double t,
                      double delta, const SolverConfig& cfg = {});

/// F_hat(x, t, z) = z^2/|U| - (1/x) D_d \int Tr log(cos(t/2) + cosh(x s)).
double f_hat(const DispersionModel& model, Coupling U, double x, double t, double z,
             const SolverConfig& cfg = {});

struct FHatPartials {
  double value;
  double dx;
  double dt;
  double dz;
};

FHatPartials f_hat_partials(const DispersionModel& model, Coupling U, double x, double t,
                            double z, const SolverConfig& cfg = {});

struct FirstDerivatives {
  double dF_dbeta;
  double dF_dt;
};

/// Analytic dF/dbeta and dF/dt at the self-consistent gap.
FirstDerivatives first_derivatives(const DispersionModel& model, Coupling U, double beta,
                                   double t, const SolverConfig& cfg = {});

/// First derivatives when Delta(beta, t) is already known.
FirstDerivatives first_derivatives_at(const DispersionModel& model, Coupling U, double beta,
                                      double t, double delta, const SolverConfig& cfg = {});

struct FreeEnergyPoint {
  double F;
  double dF_dbeta;
  double dF_dt;
  Regime regime;
  double delta;
};

FreeEnergyPoint evaluate_point(const DispersionModel& model, Coupling U, double beta, double t,
                               const SolverConfig& cfg = {});

/// Second-derivative jumps of F across the transition set at (beta0, tau(beta0)).
/// Jumps are "ordered side minus disordered side".
struct JumpReport {
  double beta0 = 0.0;
  double t0 = 0.0;
  /// (dg/dt)^2 / D and (dg/dx)^2 / D with D = lim (1/z) dg/dz < 0.
  double analytic_jump_dt2 = 0.0;
  double analytic_jump_dbeta2 = 0.0;
  /// One-sided finite-difference estimates of the same jumps.
  double jump_d2F_dt2 = 0.0;
  double jump_d2F_dbeta2 = 0.0;
  /// |difference| of the one-sided limits of dF/dt (along t) and dF/dbeta
  /// (along beta).
  double c1_mismatch_dt = 0.0;
  double c1_mismatch_dbeta = 0.0;
  /// dg/dx vanishes at the point: the curve has a horizontal tangent and both
  /// beta-sides are disordered.
  bool tangent = false;
  /// True when beta0 is beta_c, where t0 = 2 pi and both t-sides are disordered.
  bool critical = false;
  double step = 0.0;
};

/// beta0 in (0, beta_c]; beta0 equal to beta_c (within 1e-12 relative) is
/// treated as the critical point (beta_c, 2 pi).
JumpReport second_derivative_jumps(const DispersionModel& model, Coupling U, double beta0,
                                   const SolverConfig& cfg = {});

/// -(Delta/2) D_d \int G(rho, rho) for 0-based orbital index rho, t = beta theta.
double ssb_order(const DispersionModel& model, Coupling U, double beta, double theta, int orbital,
                 const SolverConfig& cfg = {});

/// (D_d/2) \int G(rho, rho) at the self-consistent gap.
double orbital_weight(const DispersionModel& model, Coupling U, double beta, double theta,
                      int orbital, const SolverConfig& cfg = {});

struct OrderParameters {
  double odlro;
  double cooper_density;
  double delta;
  Regime regime;
};

/// Delta^2 prod_{rho in {rho_hat, eta_hat}} (D_d/2) \int G(rho, rho) and
/// Delta^2 / U^2. Throws DomainError on the transition set.
OrderParameters odlro_and_density(const DispersionModel& model, Coupling U, double beta,
                                  double theta, int rho_hat, int eta_hat,
                                  const SolverConfig& cfg = {});

}  // namespace bcs
