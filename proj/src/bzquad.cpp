#include "bcs/bzquad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bcs/errors.hpp"

namespace bcs {

namespace {

// Neumaier compensated accumulator.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

class GridIntegrator {
 public:
  GridIntegrator(const DispersionModel& model, std::size_t count, const VectorFn& f,
                 std::optional<int> orbital)
      : model_(model),
        count_(count),
        f_(f),
        orbital_(orbital),
        eig_(static_cast<std::size_t>(model.orbitals())),
        scratch_(count),
        acc_(count) {}

  // Adds every node of the n^d grid for which `include` holds.
  template <class Pred>
  void sweep(std::size_t n, Pred&& include) {
    const int d = model_.dimension();
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    std::vector<std::size_t> index(static_cast<std::size_t>(d), 0);
    std::vector<double> kappa(static_cast<std::size_t>(d), 0.0);
    while (true) {
      if (include(index)) {
        for (std::size_t j = 0; j < index.size(); ++j)
          kappa[j] = step * static_cast<double>(index[j]);
        add_point(kappa);
      }
      std::size_t j = 0;
      for (; j < index.size(); ++j) {
        if (++index[j] < n) break;
        index[j] = 0;
      }
      if (j == index.size()) return;
    }
  }

  void add_point(std::span<const double> kappa) {
    model_.eigenvalues_dual(kappa, eig_);
    if (orbital_) {
      add_eigenvalue(eig_[static_cast<std::size_t>(*orbital_)]);
    } else {
      for (double lambda : eig_) add_eigenvalue(lambda);
    }
  }

  std::vector<double> estimate(double points) const {
    std::vector<double> out(count_);
    for (std::size_t i = 0; i < count_; ++i) out[i] = acc_[i].value() / points;
    return out;
  }

 private:
  void add_eigenvalue(double lambda) {
    std::fill(scratch_.begin(), scratch_.end(), 0.0);
    f_(lambda, scratch_);
    for (std::size_t i = 0; i < count_; ++i) acc_[i].add(scratch_[i]);
  }

  const DispersionModel& model_;
  std::size_t count_;
  const VectorFn& f_;
  std::optional<int> orbital_;
  std::vector<double> eig_;
  std::vector<double> scratch_;
  std::vector<Accumulator> acc_;
};

// abs_tol, raised to a few ulps of the estimate when the integral is so
// large that abs_tol lies below double-precision resolution.
double tolerance(const QuadratureConfig& cfg, double estimate) {
  return std::max(cfg.abs_tol, 16.0 * std::numeric_limits<double>::epsilon() * std::abs(estimate));
}

std::vector<double> integrate(const DispersionModel& model, std::size_t count, const VectorFn& f,
                              const QuadratureConfig& cfg, std::optional<int> orbital) {
  cfg.validate();
  if (orbital && (*orbital < 0 || *orbital >= model.orbitals()))
    throw DomainError("orbital index out of range");

  GridIntegrator grid(model, count, f, orbital);
  if (model.is_k_independent()) {
    const std::vector<double> origin(static_cast<std::size_t>(model.dimension()), 0.0);
    grid.add_point(origin);
    return grid.estimate(1.0);
  }

  const int d = model.dimension();
  std::size_t n = cfg.base_points_per_dim;
  grid.sweep(n, [](const auto&) { return true; });
  std::vector<double> previous = grid.estimate(std::pow(static_cast<double>(n), d));
  std::vector<double> current = previous;
  for (int doubling = 0; doubling < cfg.max_doublings; ++doubling) {
    n *= 2;
    // Nodes of the coarser grid are exactly those with all-even indices.
    grid.sweep(n, [](const std::vector<std::size_t>& idx) {
      return std::any_of(idx.begin(), idx.end(), [](std::size_t i) { return i % 2 == 1; });
    });
    current = grid.estimate(std::pow(static_cast<double>(n), d));
    bool converged = true;
    for (std::size_t i = 0; i < count; ++i)
      converged = converged && std::abs(current[i] - previous[i]) < tolerance(cfg, current[i]);
    if (converged) return current;
    if (doubling + 1 < cfg.max_doublings) previous = current;
  }

  std::size_t worst_index = 0;
  double worst = -1.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double diff = std::abs(current[i] - previous[i]);
    if (diff > worst) {
      worst = diff;
      worst_index = i;
    }
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "trace integral did not converge after " << cfg.max_doublings
      << " doublings (estimates " << previous[worst_index] << ", " << current[worst_index] << ")";
  throw QuadratureError(msg.str(), previous[worst_index], current[worst_index]);
}

}  // namespace

void QuadratureConfig::validate() const {
  if (base_points_per_dim < 4) throw DomainError("quadrature needs at least 4 points per dimension");
  if (!(abs_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (max_doublings < 1) throw DomainError("quadrature max_doublings must be positive");
}

double trace_integral(const DispersionModel& model, const ScalarFn& f, const QuadratureConfig& cfg) {
  const VectorFn wrapped = [&f](double lambda, std::span<double> out) { out[0] = f(lambda); };
  return integrate(model, 1, wrapped, cfg, std::nullopt)[0];
}

std::vector<double> trace_integrals(const DispersionModel& model, std::size_t count,
                                    const VectorFn& f, const QuadratureConfig& cfg) {
  return integrate(model, count, f, cfg, std::nullopt);
}

double orbital_integral(const DispersionModel& model, int orbital, const ScalarFn& f,
                        const QuadratureConfig& cfg) {
  const VectorFn wrapped = [&f](double lambda, std::span<double> out) { out[0] = f(lambda); };
  return integrate(model, 1, wrapped, cfg, orbital)[0];
}

double trace_sum_fixed(const DispersionModel& model, const ScalarFn& f, std::size_t points_per_dim) {
  if (points_per_dim < 1) throw DomainError("need at least one grid point");
  const VectorFn wrapped = [&f](double lambda, std::span<double> out) { out[0] = f(lambda); };
  GridIntegrator grid(model, 1, wrapped, std::nullopt);
  grid.sweep(points_per_dim, [](const auto&) { return true; });
  return grid.estimate(std::pow(static_cast<double>(points_per_dim), model.dimension()))[0];
}

}  // namespace bcs
