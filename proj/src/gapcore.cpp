#include "bcs/gapcore.hpp"

#include <cmath>
#include <numbers>
#include <span>

#include "kernels.hpp"
#include "rootfind.hpp"

namespace bcs {

namespace {

constexpr double kPi = std::numbers::pi;

void check_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("x (inverse temperature) must be positive");
}

void check_z(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("z must be finite and non-negative");
}

enum Component : std::size_t { kH, kDx, kDt, kDz, kDxx, kDxt, kDtt, kCount };

std::vector<double> kernel_integrals(const DispersionModel& model, double x, double t, double z,
                                     std::size_t count, const QuadratureConfig& quad) {
  check_x(x);
  check_z(z);
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  const detail::TimeFactors tf(t);
  const VectorFn f = [&](double lambda, std::span<double> out) {
    const auto k = detail::kernel_values(lambda, x, z, tf);
    const double all[kCount] = {k.h, k.dx, k.dt, k.dz_density, k.dxx, k.dxt, k.dtt};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = all[i];
  };
  return trace_integrals(model, count, f, quad);
}

double single_component(const DispersionModel& model, double x, double t, double z,
                        Component which, const QuadratureConfig& quad) {
  check_x(x);
  check_z(z);
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  const detail::TimeFactors tf(t);
  const VectorFn f = [&](double lambda, std::span<double> out) {
    const auto k = detail::kernel_values(lambda, x, z, tf);
    const double all[kCount] = {k.h, k.dx, k.dt, k.dz_density, k.dxx, k.dxt, k.dtt};
    out[0] = all[which];
  };
  return trace_integrals(model, 1, f, quad)[0];
}

}  // namespace

void RootConfig::validate() const {
  if (!(abs_tol > 0.0) || max_iter < 1 || !(classification_tol > 0.0) || !(x_rel_tol > 0.0))
    throw DomainError("root tolerances and iteration limit must be positive");
}

void SolverConfig::validate() const {
  quad.validate();
  root.validate();
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::QPlus:
      return "QPlus";
    case Regime::QZero:
      return "QZero";
    case Regime::QMinus:
      return "QMinus";
  }
  return "unknown";
}

double g(const DispersionModel& model, Coupling U, double x, double t, double z,
         const SolverConfig& cfg) {
  return -2.0 / U.magnitude() + single_component(model, x, t, z, kH, cfg.quad);
}

double dg_dx(const DispersionModel& model, Coupling, double x, double t, double z,
             const SolverConfig& cfg) {
  return single_component(model, x, t, z, kDx, cfg.quad);
}

double dg_dt(const DispersionModel& model, Coupling, double x, double t, double z,
             const SolverConfig& cfg) {
  return single_component(model, x, t, z, kDt, cfg.quad);
}

double dg_dz(const DispersionModel& model, Coupling, double x, double t, double z,
             const SolverConfig& cfg, bool raw) {
  const double density = single_component(model, x, t, z, kDz, cfg.quad);
  if (z == 0.0) return raw ? 0.0 : density;
  return z * density;
}

double dg_dz_density(const DispersionModel& model, double x, double t, double z,
                     const SolverConfig& cfg) {
  return single_component(model, x, t, z, kDz, cfg.quad);
}

GapPartials gap_partials(const DispersionModel& model, Coupling U, double x, double t, double z,
                         const SolverConfig& cfg) {
  const auto v = kernel_integrals(model, x, t, z, kCount, cfg.quad);
  return {-2.0 / U.magnitude() + v[kH], v[kDx], v[kDt], v[kDz], v[kDxx], v[kDxt], v[kDtt]};
}

void check_admissible(const DispersionModel& model, Coupling U) {
  if (!(U.magnitude() < 2.0 * model.e_min() / model.orbitals()))
    throw AdmissibilityError("coupling must satisfy |U| < 2 e_min / b");
}

double beta_c_upper_bound(const DispersionModel& model, Coupling U) {
  check_admissible(model, U);
  const double r = model.orbitals() * U.magnitude() / (2.0 * model.e_min());
  return (2.0 / model.e_min()) * 0.5 * std::log1p(2.0 * r / (1.0 - r));
}

GapResult solve_delta(const DispersionModel& model, Coupling U, double beta, double t,
                      const SolverConfig& cfg) {
  cfg.validate();
  check_x(beta);
  const double g0 = g(model, U, beta, t, 0.0, cfg);
  if (g0 < -cfg.root.classification_tol) return {0.0, Regime::QMinus, g0, 0};
  if (g0 <= cfg.root.classification_tol) return {0.0, Regime::QZero, g0, 0};

  auto f = [&](double z) { return g(model, U, beta, t, z, cfg); };
  double lo = 0.0;
  double flo = g0;
  double hi = 1.0;
  double fhi = f(hi);
  int expansions = 0;
  while (fhi > 0.0) {
    if (++expansions > 1100) throw RootError("solve_delta: could not bracket the gap");
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = f(hi);
  }
  const auto root = detail::bracketed_root(f, lo, hi, flo, fhi, cfg.root, "solve_delta");
  if (std::abs(root.fx) > cfg.root.abs_tol)
    throw RootError("solve_delta: residual above tolerance");
  return {root.x, Regime::QPlus, root.fx, root.iterations + expansions};
}

double solve_beta_c(const DispersionModel& model, Coupling U, const SolverConfig& cfg) {
  cfg.validate();
  const double hi = beta_c_upper_bound(model, U);
  auto f = [&](double beta) { return g(model, U, beta, 2.0 * kPi, 0.0, cfg); };
  const double fhi = f(hi);
  if (fhi >= 0.0) {
    if (fhi <= cfg.root.abs_tol) return hi;
    throw NumericalError("solve_beta_c: g is positive at the upper bound");
  }
  double lo = 0.5 * hi;
  double flo = f(lo);
  for (int i = 0; flo <= 0.0; ++i) {
    if (i > 1000) throw RootError("solve_beta_c: could not bracket beta_c");
    lo *= 0.5;
    flo = f(lo);
  }
  const auto root = detail::bracketed_root(f, lo, hi, flo, fhi, cfg.root, "solve_beta_c");
  if (std::abs(root.fx) > cfg.root.abs_tol)
    throw RootError("solve_beta_c: residual above tolerance");
  return root.x;
}

double solve_tau(const DispersionModel& model, Coupling U, double beta, const SolverConfig& cfg) {
  cfg.validate();
  check_x(beta);
  check_admissible(model, U);
  auto f = [&](double t) { return g(model, U, beta, t, 0.0, cfg); };
  const double flo = f(kPi);
  const double fhi = f(2.0 * kPi);
  if (!(flo < 0.0) || !(fhi > 0.0)) throw DomainError("beta must lie in (0, beta_c)");
  const auto root = detail::bracketed_root(f, kPi, 2.0 * kPi, flo, fhi, cfg.root, "solve_tau");
  if (std::abs(root.fx) > cfg.root.abs_tol) throw RootError("solve_tau: residual above tolerance");
  return root.x;
}

CanonicalTime canonical_time(double t) {
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  const double period = 4.0 * kPi;
  const double periods = std::floor(t / period);
  double r = t - periods * period;
  if (r < 0.0) r = 0.0;
  if (r >= period) r = 0.0;
  const bool reflected = r > 2.0 * kPi;
  return {reflected ? period - r : r, static_cast<long long>(periods), reflected};
}

}  // namespace bcs
