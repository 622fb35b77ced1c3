#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "bcs/gapcore.hpp"

namespace bcs {

/// dtau/dbeta = -(dg/dx) / (dg/dt) at (beta, tau(beta), 0).
double tau_prime(const DispersionModel& model, Coupling U, double beta,
                 const SolverConfig& cfg = {});

/// Second derivative of tau from the implicit-function expansion
/// (2 g_xt g_x g_t - g_xx g_t^2 - g_tt g_x^2) / g_t^3.
double tau_second(const DispersionModel& model, Coupling U, double beta,
                  const SolverConfig& cfg = {});

struct TauPoint {
  double tau;
  double tau_prime;
  double tau_second;
  /// dg/dx at (beta, tau, 0); sign(tau') = -sign(g_x).
  double g_x;
  double residual;
};

/// tau and its derivatives at one beta. tau_second is NaN unless requested.
TauPoint tau_point(const DispersionModel& model, Coupling U, double beta,
                   const SolverConfig& cfg = {}, bool with_second = false);

struct GridSpec {
  /// Uniform points on beta / beta_c in [0.1, 0.9].
  int core_points = 512;
  /// Geometric points per decade toward each endpoint.
  int decade_points = 64;
  int decades = 3;
  bool second_derivative = false;
  int threads = 1;

  void validate() const;
};

/// Hybrid grid on (0, beta_c): geometric toward both ends, uniform in between.
std::vector<double> beta_grid(double beta_c, const GridSpec& grid);

enum class SampleFlag { None, Bracket, Plateau };

std::string_view sample_flag_name(SampleFlag f);

struct CurveSample {
  double beta;
  double tau;
  double tau_prime;
  std::optional<double> tau_second;
  double residual;
  SampleFlag flag;
};

struct LocalMinimum {
  double beta;
  double tau;
  double tau_second;
  /// false for brackets where |tau'| stays below the plateau tolerance.
  bool refined;
};

struct BoundaryCurve {
  double beta_c = 0.0;
  std::vector<CurveSample> samples;
  /// Refined minima only.
  std::vector<LocalMinimum> local_minima;
  /// Sign changes excluded from the count as unresolvable plateaus.
  std::vector<LocalMinimum> ambiguous;

  int minima_count() const noexcept { return static_cast<int>(local_minima.size()); }
};

inline constexpr double kPlateauTolerance = 1e-11;

BoundaryCurve trace_curve(const DispersionModel& model, Coupling U, const GridSpec& grid = {},
                          const SolverConfig& cfg = {});

/// w~(x, y, z) = -(1 + y P(x))(1 + P(zx))^2 / ((1 + y P(zx))(1 + P(x))^2) with
/// P(a) = sum_{m>=1} (y+1)^{m-1} (2a)^m / (2m)!. At y = -1 this is the
/// rational (x-1)(1+zx)^2 / ((1-zx)(1+x)^2), defined for zx < 1.
double w_tilde(double x, double y, double z);

/// Roots of a^2 - ((1+eta)/(3 eta)) a + 1/eta for eta in (0, 17 - 12 sqrt 2].
double a_plus(double eta);
double a_minus(double eta);
/// Midpoint (a_+ + a_-) / 2.
double a_hat(double eta);

/// W(x, y, z, s) = sinh x / (y + cosh x) + s sinh(zx) / ((y + cosh(zx)) z).
double big_w(double x, double y, double z, double s);

enum class ThresholdSide { Above, At, Below };

std::string_view threshold_side_name(ThresholdSide s);

enum class ShapePrediction { SingleMinimum, MultipleMinima };

struct ShapeVerdict {
  double ratio = 0.0;
  ThresholdSide threshold_side = ThresholdSide::Above;
  ShapePrediction prediction = ShapePrediction::SingleMinimum;
  /// (b - b') / b' and the two level values it is compared against (NaN when
  /// the ratio is above the threshold).
  double s = 0.0;
  double level_plus = 0.0;
  double level_minus = 0.0;
  /// Observed count from trace_curve, or -1 when no curve was traced.
  int minima_count = -1;
  /// Only set for e_min = e_max with |U| <= e_min / (sinh(2) b).
  bool convexity_certified = false;
};

/// Small-coupling prediction for the multi-orbital model. Other kinds throw
/// DomainError.
ShapeVerdict classify_shape(const DispersionModel& model, std::optional<Coupling> U = std::nullopt);

struct ExactTauCheck {
  double tau;
  double residual;
};

/// Closed-form tau of the multi-orbital model and g evaluated there.
ExactTauCheck multiorbital_exact_tau_check(int b, int b_prime, double e_min, double e_max,
                                           Coupling U, double beta, const SolverConfig& cfg = {});

}  // namespace bcs
