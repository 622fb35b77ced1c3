#pragma once

// Small reference computations written independently of the library.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// Plain bisection for a sign change of f on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Mean of f over [0, 2 pi) by the trapezoidal rule with n nodes.
inline double periodic_mean(const std::function<double(double)>& f, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += f(2.0 * kPi * i / n);
  return sum / n;
}

/// sinh(x s) / ((c + cosh(x s)) s) summed directly.
inline double kernel_h(double lambda, double x, double t, double z) {
  const double s = std::sqrt(lambda * lambda + z * z);
  return std::sinh(x * s) / ((std::cos(0.5 * t) + std::cosh(x * s)) * s);
}

/// Central difference of f at x with step h.
inline double central(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
