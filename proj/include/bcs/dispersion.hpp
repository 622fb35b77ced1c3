#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bcs {

/// Dual basis of the momentum lattice and the normalization
/// D_d = |det(v_1, ..., v_d)|^{-1} (2 pi)^{-d}.
class BZGeometry {
 public:
  /// Canonical basis v_j = e_j.
  static BZGeometry canonical(int d);

  /// `dual_basis` is row-major d x d; column j holds the vector v_j.
  static BZGeometry from_basis(int d, std::vector<double> dual_basis);

  int dimension() const noexcept { return d_; }
  const std::vector<double>& dual_basis() const noexcept { return basis_; }
  double normalization() const noexcept { return norm_; }

  /// Dual coordinates kappa with k = sum_j kappa_j v_j.
  std::vector<double> dual_coordinates(std::span<const double> k) const;

  /// Recomputes D_d from the stored basis.
  double recompute_normalization() const;

 private:
  BZGeometry(int d, std::vector<double> basis, std::vector<double> inverse, double norm)
      : d_(d), basis_(std::move(basis)), inverse_(std::move(inverse)), norm_(norm) {}

  int d_;
  std::vector<double> basis_;
  std::vector<double> inverse_;
  double norm_;
};

/// E(k) = e I_b.
struct ConstantDiagonal {
  int b;
  double e;
};

/// E(k) = e_max I_{b'} (+) e_min I_{b - b'}.
struct MultiOrbitalDiagonal {
  int b;
  int b_prime;
  double e_min;
  double e_max;
};

/// One band, E(k) = t (cos k + 1) + e_min.
struct Cosine1D {
  double t_hop;
  double e_min;
};

/// Smooth plateau dispersion E(k) = Phi(kappa) I_b, with Phi = e_max on a
/// cube of measure fraction s and Phi = e_min outside a cube of fraction t.
struct Bump {
  int d;
  int b;
  double s;
  double t;
  double e_min;
  double e_max;
};

using DispersionKind = std::variant<ConstantDiagonal, MultiOrbitalDiagonal, Cosine1D, Bump>;

struct MeasureFractions {
  double s;
  double t;
};

/// A gapped dispersion relation, accessed only through its eigenvalues.
/// Immutable after construction.
class DispersionModel {
 public:
  DispersionModel(DispersionKind kind, BZGeometry geometry);

  static DispersionModel constant(int b, double e, int d = 1);
  static DispersionModel multi_orbital(int b, int b_prime, double e_min, double e_max, int d = 1);
  static DispersionModel cosine_1d(double t_hop, double e_min);

  const DispersionKind& kind() const noexcept { return kind_; }
  const BZGeometry& geometry() const noexcept { return geometry_; }
  int dimension() const noexcept { return geometry_.dimension(); }
  int orbitals() const noexcept { return b_; }
  double e_min() const noexcept { return e_min_; }
  double e_max() const noexcept { return e_max_; }

  /// True when the eigenvalues do not depend on k.
  bool is_k_independent() const noexcept;

  std::string kind_name() const;

  /// Eigenvalues at Cartesian momentum k (length d).
  std::vector<double> eigenvalues(std::span<const double> k) const;

  /// Eigenvalues at dual coordinates kappa, written into `out` (length b).
  void eigenvalues_dual(std::span<const double> kappa, std::span<double> out) const;

 private:
  DispersionKind kind_;
  BZGeometry geometry_;
  int b_ = 0;
  double e_min_ = 0.0;
  double e_max_ = 0.0;
};

/// C-infinity plateau profile in [0, 1]: equal to 1 for |x - pi| <= inner,
/// 0 for |x - pi| >= outer, with x taken modulo 2 pi.
double plateau_profile(double x, double inner, double outer);

DispersionModel build_bump_dispersion(int d, int b, MeasureFractions fractions, double e_min,
                                      double e_max, BZGeometry geometry);
DispersionModel build_bump_dispersion(int d, int b, MeasureFractions fractions, double e_min,
                                      double e_max);

struct ObservedBounds {
  double min;
  double max;
};

/// Min and max of |lambda| over a uniform periodic grid with about
/// `n_samples` points in total.
ObservedBounds verify_bounds(const DispersionModel& model, std::size_t n_samples);

/// Normalized measure of {k : every |eigenvalue| is within `tolerance` of
/// `level`}, estimated by counting nodes of a uniform grid with
/// `points_per_dim` nodes per axis. For the bump model at its e_max and e_min
/// levels the distance to the level is evaluated in log space, so that
/// tolerance 0 selects the exact level set rather than the much wider set
/// where the eigenvalue rounds to the level.
double level_set_fraction(const DispersionModel& model, double level, std::size_t points_per_dim,
                          double tolerance = 0.0);

}  // namespace bcs
