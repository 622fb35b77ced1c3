#include "bcs/dispersion.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bcs/errors.hpp"
#include "grid.hpp"

namespace bcs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double normalization_from(const RowMatrix& basis) {
  const double det = std::abs(basis.determinant());
  return 1.0 / (det * std::pow(kTwoPi, basis.rows()));
}

// Smooth ramp exp(-1/x), zero for x <= 0.
double ramp(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double wrap_periodic(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log A and log B of the plateau profile A / (A + B) at one coordinate.
struct ProfileLogs {
  double up;
  double down;
};

ProfileLogs profile_logs(double x, double inner, double outer) {
  const double r = std::abs(wrap_periodic(x) - std::numbers::pi);
  return {r < outer ? -1.0 / (outer - r) : kNegInf, r > inner ? -1.0 / (r - inner) : kNegInf};
}

// log(-log phi) for phi = A / (A + B), i.e. log(log1p(B / A)).
double log_neg_log_profile(ProfileLogs p) {
  if (p.down == kNegInf) return kNegInf;
  if (p.up == kNegInf) return kPosInf;
  const double x = p.down - p.up;
  if (x < -30.0) return x;
  if (x > 30.0) return std::log(x);
  return std::log(std::log1p(std::exp(x)));
}

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a == kPosInf || b == kPosInf) return kPosInf;
  return std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
}

// Natural logs of e_max - Phi and Phi - e_min for the bump model, exact
// (-inf) on the respective level sets.
struct BumpLevelLogs {
  double below_max;
  double above_min;
};

BumpLevelLogs bump_level_logs(const Bump& k, std::span<const double> kappa) {
  const double inner = std::numbers::pi * std::pow(k.s, 1.0 / k.d);
  const double outer = std::numbers::pi * std::pow(k.t, 1.0 / k.d);
  // m = -log(prod phi_j), carried as log m.
  double log_m = kNegInf;
  for (int j = 0; j < k.d; ++j)
    log_m = log_add(log_m, log_neg_log_profile(profile_logs(kappa[static_cast<std::size_t>(j)], inner, outer)));
  const double log_height = std::log(k.e_max - k.e_min);
  if (log_m == kNegInf) return {kNegInf, log_height};
  if (log_m == kPosInf) return {log_height, kNegInf};
  const double m = std::exp(log_m);
  // log(1 - e^{-m}) ~ log m for small m.
  const double log_one_minus = log_m < -30.0 ? log_m : std::log(-std::expm1(-m));
  return {log_height + log_one_minus, log_height - m};
}

struct Bounds {
  int b;
  double lo;
  double hi;
};

Bounds validate(const DispersionKind& kind, int d) {
  return std::visit(
      [d](const auto& k) -> Bounds {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConstantDiagonal>) {
          if (k.b < 1) throw DomainError("constant model: b must be >= 1");
          if (!(k.e > 0.0)) throw DomainError("constant model: e must be > 0");
          return {k.b, k.e, k.e};
        } else if constexpr (std::is_same_v<K, MultiOrbitalDiagonal>) {
          if (k.b < 2 || k.b_prime < 1 || k.b_prime >= k.b)
            throw DomainError("multi-orbital model: need b >= 2 and 1 <= b' < b");
          if (!(k.e_min > 0.0) || !(k.e_max >= k.e_min))
            throw DomainError("multi-orbital model: need 0 < e_min <= e_max");
          return {k.b, k.e_min, k.e_max};
        } else if constexpr (std::is_same_v<K, Cosine1D>) {
          if (d != 1) throw DomainError("cosine model is one-dimensional");
          if (!(k.t_hop >= 0.0)) throw DomainError("cosine model: t_hop must be >= 0");
          if (!(k.e_min > 0.0)) throw DomainError("cosine model: e_min must be > 0");
          return {1, k.e_min, k.e_min + 2.0 * k.t_hop};
        } else {
          if (k.d != d) throw DomainError("bump model: dimension does not match geometry");
          if (k.b < 1) throw DomainError("bump model: b must be >= 1");
          if (!(0.0 < k.s && k.s < k.t && k.t < 1.0))
            throw DomainError("bump model: fractions must satisfy 0 < s < t < 1");
          if (!(0.0 < k.e_min && k.e_min < k.e_max))
            throw DomainError("bump model: need 0 < e_min < e_max");
          return {k.b, k.e_min, k.e_max};
        }
      },
      kind);
}

}  // namespace

BZGeometry BZGeometry::canonical(int d) {
  if (d < 1) throw DomainError("dimension must be positive");
  std::vector<double> basis(static_cast<std::size_t>(d * d), 0.0);
  for (int i = 0; i < d; ++i) basis[static_cast<std::size_t>(i * d + i)] = 1.0;
  return BZGeometry(d, basis, basis, std::pow(kTwoPi, -d));
}

BZGeometry BZGeometry::from_basis(int d, std::vector<double> dual_basis) {
  if (d < 1) throw DomainError("dimension must be positive");
  if (dual_basis.size() != static_cast<std::size_t>(d * d))
    throw DomainError("dual basis must have d*d entries");
  const Eigen::Map<const RowMatrix> m(dual_basis.data(), d, d);
  const Eigen::FullPivLU<RowMatrix> lu(m);
  if (!lu.isInvertible()) throw DomainError("dual basis is not invertible");
  const RowMatrix inv = lu.inverse();
  std::vector<double> inverse(inv.data(), inv.data() + inv.size());
  const double norm = normalization_from(m);
  return BZGeometry(d, std::move(dual_basis), std::move(inverse), norm);
}

std::vector<double> BZGeometry::dual_coordinates(std::span<const double> k) const {
  if (k.size() != static_cast<std::size_t>(d_))
    throw DomainError("momentum has wrong dimension");
  std::vector<double> kappa(k.size(), 0.0);
  for (int i = 0; i < d_; ++i) {
    double acc = 0.0;
    for (int j = 0; j < d_; ++j) acc += inverse_[static_cast<std::size_t>(i * d_ + j)] * k[j];
    kappa[static_cast<std::size_t>(i)] = acc;
  }
  return kappa;
}

double BZGeometry::recompute_normalization() const {
  const Eigen::Map<const RowMatrix> m(basis_.data(), d_, d_);
  return normalization_from(m);
}

DispersionModel::DispersionModel(DispersionKind kind, BZGeometry geometry)
    : kind_(std::move(kind)), geometry_(std::move(geometry)) {
  const Bounds bounds = validate(kind_, geometry_.dimension());
  b_ = bounds.b;
  e_min_ = bounds.lo;
  e_max_ = bounds.hi;
}

DispersionModel DispersionModel::constant(int b, double e, int d) {
  return DispersionModel(ConstantDiagonal{b, e}, BZGeometry::canonical(d));
}

DispersionModel DispersionModel::multi_orbital(int b, int b_prime, double e_min, double e_max,
                                               int d) {
  return DispersionModel(MultiOrbitalDiagonal{b, b_prime, e_min, e_max}, BZGeometry::canonical(d));
}

DispersionModel DispersionModel::cosine_1d(double t_hop, double e_min) {
  return DispersionModel(Cosine1D{t_hop, e_min}, BZGeometry::canonical(1));
}

bool DispersionModel::is_k_independent() const noexcept {
  return std::holds_alternative<ConstantDiagonal>(kind_) ||
         std::holds_alternative<MultiOrbitalDiagonal>(kind_) ||
         (std::holds_alternative<Cosine1D>(kind_) && std::get<Cosine1D>(kind_).t_hop == 0.0);
}

std::string DispersionModel::kind_name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConstantDiagonal>) return "constant";
        else if constexpr (std::is_same_v<K, MultiOrbitalDiagonal>) return "multi_orbital";
        else if constexpr (std::is_same_v<K, Cosine1D>) return "cosine_1d";
        else return "bump";
      },
      kind_);
}

std::vector<double> DispersionModel::eigenvalues(std::span<const double> k) const {
  const std::vector<double> kappa = geometry_.dual_coordinates(k);
  std::vector<double> out(static_cast<std::size_t>(b_));
  eigenvalues_dual(kappa, out);
  return out;
}

void DispersionModel::eigenvalues_dual(std::span<const double> kappa, std::span<double> out) const {
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ConstantDiagonal>) {
          std::fill(out.begin(), out.end(), k.e);
        } else if constexpr (std::is_same_v<K, MultiOrbitalDiagonal>) {
          std::fill(out.begin(), out.begin() + k.b_prime, k.e_max);
          std::fill(out.begin() + k.b_prime, out.end(), k.e_min);
        } else if constexpr (std::is_same_v<K, Cosine1D>) {
          out[0] = k.t_hop * (std::cos(kappa[0]) + 1.0) + k.e_min;
        } else {
          const double inner = std::numbers::pi * std::pow(k.s, 1.0 / k.d);
          const double outer = std::numbers::pi * std::pow(k.t, 1.0 / k.d);
          double profile = 1.0;
          for (int j = 0; j < k.d; ++j) profile *= plateau_profile(kappa[j], inner, outer);
          std::fill(out.begin(), out.end(), k.e_min + (k.e_max - k.e_min) * profile);
        }
      },
      kind_);
}

double plateau_profile(double x, double inner, double outer) {
  const double r = std::abs(wrap_periodic(x) - std::numbers::pi);
  const double up = ramp(outer - r);
  if (up == 0.0) return 0.0;
  return up / (up + ramp(r - inner));
}

DispersionModel build_bump_dispersion(int d, int b, MeasureFractions fractions, double e_min,
                                      double e_max, BZGeometry geometry) {
  if (!(0.0 < fractions.s && fractions.s < fractions.t && fractions.t < 1.0))
    throw DomainError("bump fractions must satisfy 0 < s < t < 1");
  if (!(0.0 < e_min && e_min < e_max)) throw DomainError("bump model requires 0 < e_min < e_max");
  return DispersionModel(Bump{d, b, fractions.s, fractions.t, e_min, e_max}, std::move(geometry));
}

DispersionModel build_bump_dispersion(int d, int b, MeasureFractions fractions, double e_min,
                                      double e_max) {
  return build_bump_dispersion(d, b, fractions, e_min, e_max, BZGeometry::canonical(d));
}

ObservedBounds verify_bounds(const DispersionModel& model, std::size_t n_samples) {
  const int d = model.dimension();
  const auto per_dim = static_cast<std::size_t>(
      std::max(2.0, std::floor(std::pow(static_cast<double>(n_samples), 1.0 / d) + 1e-9)));
  ObservedBounds bounds{std::numeric_limits<double>::infinity(),
                        -std::numeric_limits<double>::infinity()};
  std::vector<double> eig(static_cast<std::size_t>(model.orbitals()));
  detail::for_each_grid_point(d, per_dim, [&](std::span<const double> kappa) {
    model.eigenvalues_dual(kappa, eig);
    for (double v : eig) {
      bounds.min = std::min(bounds.min, std::abs(v));
      bounds.max = std::max(bounds.max, std::abs(v));
    }
  });
  return bounds;
}

double level_set_fraction(const DispersionModel& model, double level, std::size_t points_per_dim,
                          double tolerance) {
  if (points_per_dim < 2) throw DomainError("need at least two grid points per dimension");
  if (!(tolerance >= 0.0)) throw DomainError("level tolerance must be non-negative");
  const auto* bump = std::get_if<Bump>(&model.kind());
  const bool bump_max = bump != nullptr && level == bump->e_max;
  const bool bump_min = bump != nullptr && level == bump->e_min;
  const double log_tol = std::log(tolerance);

  std::size_t hits = 0;
  std::size_t total = 0;
  std::vector<double> eig(static_cast<std::size_t>(model.orbitals()));
  detail::for_each_grid_point(model.dimension(), points_per_dim, [&](std::span<const double> kappa) {
    ++total;
    if (bump_max || bump_min) {
      const auto logs = bump_level_logs(*bump, kappa);
      if ((bump_max ? logs.below_max : logs.above_min) <= log_tol) ++hits;
      return;
    }
    model.eigenvalues_dual(kappa, eig);
    if (std::all_of(eig.begin(), eig.end(),
                    [&](double v) { return std::abs(std::abs(v) - level) <= tolerance; }))
      ++hits;
  });
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace bcs
