#include "bcs/freeenergy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

#include "kernels.hpp"

namespace bcs {

namespace {

constexpr double kPi = std::numbers::pi;

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
}

double ordered_delta(const DispersionModel& model, Coupling U, double beta, double t,
                     const SolverConfig& cfg) {
  return solve_delta(model, U, beta, t, cfg).delta;
}

// One-sided second derivative from values at x0 + sigma * k * h, k = 0, 1, 2.
double one_sided_second(double a0, double a1, double a2, double h, double sigma) {
  return sigma * (-3.0 * a0 + 4.0 * a1 - a2) / (2.0 * h);
}

// Quadratic extrapolation to x0 of values at x0 + sigma * k * eps, k = 1, 2, 3.
double one_sided_limit(double f1, double f2, double f3) { return 3.0 * f1 - 3.0 * f2 + f3; }

}  // namespace

double free_energy_at(const DispersionModel& model, Coupling U, double beta, double t,
                      double delta, const SolverConfig& cfg) {
  check_beta(beta);
  if (!(delta >= 0.0)) throw DomainError("delta must be non-negative");
  const detail::TimeFactors tf(t);
  const ScalarFn f = [&](double lambda) {
    const double s = std::hypot(lambda, delta);
    const double q = std::exp(-beta * s);
    const double one_minus_q = -std::expm1(-beta * s);
    // 1 + 2 c q + q^2 written without cancellation near c = -1.
    const double w = one_minus_q * one_minus_q + 2.0 * tf.cp1 * q;
    if (!(w > 0.0)) throw NumericalError("free energy: logarithm argument is not positive");
    return beta * (s - lambda) + std::log(w);
  };
  const double integral = trace_integral(model, f, cfg.quad);
  return delta * delta / U.magnitude() - integral / beta;
}

double free_energy(const DispersionModel& model, Coupling U, double beta, double t,
                   const SolverConfig& cfg) {
  return free_energy_at(model, U, beta, t, ordered_delta(model, U, beta, t, cfg), cfg);
}

FHatPartials f_hat_partials(const DispersionModel& model, Coupling U, double x, double t,
                            double z, const SolverConfig& cfg) {
  check_beta(x);
  if (!(z >= 0.0)) throw DomainError("z must be non-negative");
  const detail::TimeFactors tf(t);
  const VectorFn f = [&](double lambda, std::span<double> out) {
    const double s = std::hypot(lambda, z);
    const auto hy = detail::hyperbolic(x * s, tf);
    out[0] = hy.log_f0;
    out[1] = s * hy.s / hy.f0;
    out[2] = hy.lam / hy.f0;
    out[3] = hy.s / (hy.f0 * s);
  };
  const auto v = trace_integrals(model, 4, f, cfg.quad);
  const double g_value = -2.0 / U.magnitude() + v[3];
  return {z * z / U.magnitude() - v[0] / x, v[0] / (x * x) - v[1] / x, 0.5 * tf.sn * v[2] / x,
          -z * g_value};
}

double f_hat(const DispersionModel& model, Coupling U, double x, double t, double z,
             const SolverConfig& cfg) {
  return f_hat_partials(model, U, x, t, z, cfg).value;
}

FirstDerivatives first_derivatives_at(const DispersionModel& model, Coupling U, double beta,
                                      double t, double delta, const SolverConfig& cfg) {
  const auto p = f_hat_partials(model, U, beta, t, delta, cfg);
  const double affine = model.orbitals() * std::numbers::ln2 / (beta * beta);
  return {p.dx + affine, p.dt};
}

FirstDerivatives first_derivatives(const DispersionModel& model, Coupling U, double beta,
                                   double t, const SolverConfig& cfg) {
  return first_derivatives_at(model, U, beta, t, ordered_delta(model, U, beta, t, cfg), cfg);
}

FreeEnergyPoint evaluate_point(const DispersionModel& model, Coupling U, double beta, double t,
                               const SolverConfig& cfg) {
  const GapResult gap = solve_delta(model, U, beta, t, cfg);
  const auto d = first_derivatives_at(model, U, beta, t, gap.delta, cfg);
  return {free_energy_at(model, U, beta, t, gap.delta, cfg), d.dF_dbeta, d.dF_dt, gap.regime,
          gap.delta};
}

JumpReport second_derivative_jumps(const DispersionModel& model, Coupling U, double beta0,
                                   const SolverConfig& cfg) {
  check_beta(beta0);
  const double beta_c = solve_beta_c(model, U, cfg);
  if (beta0 > beta_c * (1.0 + 1e-12)) throw DomainError("beta0 must lie in (0, beta_c]");

  // Any positive g counts as ordered so that points close to the boundary
  // still carry their small gap.
  SolverConfig fine = cfg;
  fine.root.classification_tol = 1e-14;

  JumpReport r;
  r.beta0 = beta0;
  r.critical = beta0 >= beta_c * (1.0 - 1e-12);
  r.t0 = r.critical ? 2.0 * kPi : solve_tau(model, U, beta0, cfg);

  const GapPartials p = gap_partials(model, U, beta0, r.t0, 0.0, cfg);
  r.analytic_jump_dt2 = p.dt * p.dt / p.dz_density;
  r.analytic_jump_dbeta2 = p.dx * p.dx / p.dz_density;
  r.tangent = std::abs(p.dx) <= 1e-9 * std::max(std::abs(p.dt), 1e-300);

  double h = std::max(1e-4, 1e-4 * beta0);
  if (!r.critical) h = std::min(h, 0.25 * (2.0 * kPi - r.t0));
  h = std::min(h, 0.25 * beta0);
  r.step = h;
  // beta derivatives of F scale like inverse powers of beta0.
  const double eps_t = std::min(1e-5, h / 3.0);
  const double eps_b = std::min(1e-5 * beta0, h / 3.0);

  auto dFt = [&](double t) { return first_derivatives(model, U, beta0, t, fine).dF_dt; };
  auto dFb = [&](double beta) { return first_derivatives(model, U, beta, r.t0, fine).dF_dbeta; };

  // Along t: larger t is the ordered side (or the mirror side at beta_c).
  {
    const double a0 = dFt(r.t0);
    const double up = one_sided_second(a0, dFt(r.t0 + h), dFt(r.t0 + 2.0 * h), h, 1.0);
    const double down = one_sided_second(a0, dFt(r.t0 - h), dFt(r.t0 - 2.0 * h), h, -1.0);
    r.jump_d2F_dt2 = up - down;
    const double lim_up =
        one_sided_limit(dFt(r.t0 + eps_t), dFt(r.t0 + 2.0 * eps_t), dFt(r.t0 + 3.0 * eps_t));
    const double lim_down =
        one_sided_limit(dFt(r.t0 - eps_t), dFt(r.t0 - 2.0 * eps_t), dFt(r.t0 - 3.0 * eps_t));
    r.c1_mismatch_dt = std::abs(lim_up - lim_down);
  }

  // Along beta: the ordered side is where g(beta, t0, 0) grows, i.e. sign(dg/dx).
  {
    const double sigma = p.dx >= 0.0 ? 1.0 : -1.0;
    const double a0 = dFb(beta0);
    const double ordered = one_sided_second(a0, dFb(beta0 + sigma * h),
                                            dFb(beta0 + 2.0 * sigma * h), h, sigma);
    const double disordered = one_sided_second(a0, dFb(beta0 - sigma * h),
                                               dFb(beta0 - 2.0 * sigma * h), h, -sigma);
    r.jump_d2F_dbeta2 = ordered - disordered;
    const double lim_o = one_sided_limit(dFb(beta0 + sigma * eps_b), dFb(beta0 + 2.0 * sigma * eps_b),
                                         dFb(beta0 + 3.0 * sigma * eps_b));
    const double lim_d = one_sided_limit(dFb(beta0 - sigma * eps_b), dFb(beta0 - 2.0 * sigma * eps_b),
                                         dFb(beta0 - 3.0 * sigma * eps_b));
    r.c1_mismatch_dbeta = std::abs(lim_o - lim_d);
  }
  return r;
}

double orbital_weight(const DispersionModel& model, Coupling U, double beta, double theta,
                      int orbital, const SolverConfig& cfg) {
  check_beta(beta);
  const double t = time_from_theta(beta, theta);
  const double delta = ordered_delta(model, U, beta, t, cfg);
  const detail::TimeFactors tf(t);
  const ScalarFn f = [&](double lambda) {
    return detail::kernel_values(lambda, beta, delta, tf).h;
  };
  return 0.5 * orbital_integral(model, orbital, f, cfg.quad);
}

double ssb_order(const DispersionModel& model, Coupling U, double beta, double theta, int orbital,
                 const SolverConfig& cfg) {
  check_beta(beta);
  if (orbital < 0 || orbital >= model.orbitals()) throw DomainError("orbital index out of range");
  const double t = time_from_theta(beta, theta);
  const double delta = ordered_delta(model, U, beta, t, cfg);
  if (delta == 0.0) return 0.0;
  const detail::TimeFactors tf(t);
  const ScalarFn f = [&](double lambda) {
    return detail::kernel_values(lambda, beta, delta, tf).h;
  };
  return -0.5 * delta * orbital_integral(model, orbital, f, cfg.quad);
}

OrderParameters odlro_and_density(const DispersionModel& model, Coupling U, double beta,
                                  double theta, int rho_hat, int eta_hat,
                                  const SolverConfig& cfg) {
  check_beta(beta);
  if (rho_hat < 0 || rho_hat >= model.orbitals() || eta_hat < 0 || eta_hat >= model.orbitals())
    throw DomainError("orbital index out of range");
  const double t = time_from_theta(beta, theta);
  const GapResult gap = solve_delta(model, U, beta, t, cfg);
  if (gap.regime == Regime::QZero)
    throw DomainError("order parameters are not defined by this formula on the transition set");
  if (gap.regime == Regime::QMinus) return {0.0, 0.0, 0.0, gap.regime};

  const double delta = gap.delta;
  const detail::TimeFactors tf(t);
  const ScalarFn f = [&](double lambda) {
    return detail::kernel_values(lambda, beta, delta, tf).h;
  };
  const double w_rho = 0.5 * orbital_integral(model, rho_hat, f, cfg.quad);
  const double w_eta = rho_hat == eta_hat ? w_rho : 0.5 * orbital_integral(model, eta_hat, f, cfg.quad);
  const double d2 = delta * delta;
  return {d2 * w_rho * w_eta, d2 / (U.magnitude() * U.magnitude()), delta, gap.regime};
}

}  // namespace bcs
