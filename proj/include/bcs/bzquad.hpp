#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bcs/dispersion.hpp"

namespace bcs {

struct QuadratureConfig {
  std::size_t base_points_per_dim = 16;
  double abs_tol = 1e-12;
  int max_doublings = 12;

  void validate() const;
};

using ScalarFn = std::function<double(double)>;

/// Evaluates `count` integrand components at one eigenvalue.
using VectorFn = std::function<void(double lambda, std::span<double> out)>;

/// D_d \int_{BZ} Tr f(E(k)) dk.
///
/// k-independent models are summed exactly over their eigenvalues. Otherwise
/// the periodic trapezoidal rule is applied on a tensor grid that is doubled
/// until two successive estimates differ by less than `abs_tol` (or by 16 ulps
/// of the estimate, whichever is larger); the finer estimate is returned. Throws QuadratureError when `max_doublings` is
/// exhausted.
double trace_integral(const DispersionModel& model, const ScalarFn& f,
                      const QuadratureConfig& cfg = {});

/// Same as trace_integral but for several integrands sharing one grid; all
/// components must meet the tolerance.
std::vector<double> trace_integrals(const DispersionModel& model, std::size_t count,
                                    const VectorFn& f, const QuadratureConfig& cfg = {});

/// D_d \int_{BZ} f(lambda_orbital(k)) dk for a single eigenvalue channel
/// (0-based orbital index).
double orbital_integral(const DispersionModel& model, int orbital, const ScalarFn& f,
                        const QuadratureConfig& cfg = {});

/// Plain trapezoidal estimate on a fixed grid, without refinement.
double trace_sum_fixed(const DispersionModel& model, const ScalarFn& f, std::size_t points_per_dim);

}  // namespace bcs
