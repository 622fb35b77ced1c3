#pragma once

#include <cmath>

#include "bcs/errors.hpp"

namespace bcs {

/// Attractive coupling constant U < 0.
class Coupling {
 public:
  explicit Coupling(double u) : u_(u) {
    if (!(u < 0.0) || !std::isfinite(u)) throw DomainError("coupling U must be finite and negative");
  }

  double value() const noexcept { return u_; }
  double magnitude() const noexcept { return -u_; }

 private:
  double u_;
};

/// (U, beta, t) with t = beta * theta.
struct ModelParams {
  Coupling U;
  double beta;
  double t;
};

inline double time_from_theta(double beta, double theta) { return beta * theta; }

}  // namespace bcs
