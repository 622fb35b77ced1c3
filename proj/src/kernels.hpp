#pragma once

// Integrand kernels of the gap function and its derivatives, evaluated in a
// rescaled form that stays finite for large x * sqrt(lambda^2 + z^2).

#include <cmath>
#include <numbers>

namespace bcs::detail {

/// cos(t/2), 1 + cos(t/2) computed as 2 cos^2(t/4), and sin(t/2).
struct TimeFactors {
  double c;
  double cp1;
  double sn;

  explicit TimeFactors(double t)
      : c(std::cos(0.5 * t)), cp1(2.0 * std::cos(0.25 * t) * std::cos(0.25 * t)), sn(std::sin(0.5 * t)) {}
};

inline constexpr double kLargeArgument = 20.0;

/// sinh u, cosh u and c + cosh u, all multiplied by `lam` (1 for moderate u,
/// 2 e^{-u} for large u). `log_f0` is log(c + cosh u) without scaling.
struct Hyperbolic {
  double lam;
  double s;
  double ch;
  double f0;
  double log_f0;
};

inline Hyperbolic hyperbolic(double u, const TimeFactors& tf) {
  if (u <= kLargeArgument) {
    const double sh_half = std::sinh(0.5 * u);
    const double f0 = tf.cp1 + 2.0 * sh_half * sh_half;
    return {1.0, std::sinh(u), std::cosh(u), f0, std::log(f0)};
  }
  const double q = std::exp(-u);
  const double f0 = 1.0 + 2.0 * tf.c * q + q * q;
  return {2.0 * q, 1.0 - q * q, 1.0 + q * q, f0, std::log(f0) + u - std::numbers::ln2};
}

/// Partial derivatives of h(x, t, z) = sinh(x s) / ((c + cosh(x s)) s),
/// s = sqrt(lambda^2 + z^2). `dz_density` is (dh/dz) / z, finite at z = 0.
struct KernelValues {
  double h;
  double dx;
  double dt;
  double dz_density;
  double dxx;
  double dxt;
  double dtt;
};

// u (1 + c cosh u) - sinh u (c + cosh u), summed as a power series; it is
// O(u^3) and the direct form cancels for small u.
inline double density_numerator_series(double u, double c) {
  // sinh(2u) - 2u = sum (2u)^{2k+1}/(2k+1)!, u cosh u - sinh u = sum 2k u^{2k+1}/(2k+1)!
  const double u2 = u * u;
  double a = 0.0;
  double b = 0.0;
  double pow_u = u;
  double pow_2u = 2.0 * u;
  double fact = 1.0;
  for (int k = 1; k <= 14; ++k) {
    pow_u *= u2;
    pow_2u *= 4.0 * u2;
    fact *= (2.0 * k) * (2.0 * k + 1.0);
    a += pow_2u / fact;
    b += 2.0 * k * pow_u / fact;
  }
  return -0.5 * a + c * b;
}

inline constexpr double kSeriesArgument = 0.5;

inline KernelValues kernel_values(double lambda, double x, double z, const TimeFactors& tf) {
  const double s = std::hypot(lambda, z);
  const double u = x * s;
  const double c = tf.c;
  KernelValues k{};
  if (u <= kLargeArgument) {
    const double sh_half = std::sinh(0.5 * u);
    const double cm1 = 2.0 * sh_half * sh_half;  // cosh u - 1
    const double sh = std::sinh(u);
    const double f0 = tf.cp1 + cm1;
    const double f2 = f0 * f0;
    const double f3 = f2 * f0;
    const double one_plus_cc = tf.cp1 + c * cm1;  // 1 + c cosh u
    k.h = sh / (f0 * s);
    k.dx = one_plus_cc / f2;
    k.dt = 0.5 * tf.sn * sh / (f2 * s);
    if (u < kSeriesArgument)
      k.dz_density = density_numerator_series(u, c) / (f2 * s * s * s);
    else
      k.dz_density = (x * k.dx - k.h) / (s * s);
    k.dxx = s * sh * ((c - 2.0) * tf.cp1 - c * cm1) / f3;
    k.dxt = 0.5 * tf.sn * (one_plus_cc - sh * sh) / f3;
    k.dtt = 0.25 * sh * (tf.cp1 + tf.sn * tf.sn + c * cm1) / (f3 * s);
    return k;
  }
  const Hyperbolic hy = hyperbolic(u, tf);
  const double l = hy.lam;
  const double f2 = hy.f0 * hy.f0;
  const double f3 = f2 * hy.f0;
  k.h = hy.s / (hy.f0 * s);
  k.dx = (l + c * hy.ch) * l / f2;
  k.dt = 0.5 * tf.sn * hy.s * l / (f2 * s);
  k.dz_density = (x * k.dx - k.h) / (s * s);
  k.dxx = s * hy.s * (c * c * l - c * hy.ch - 2.0 * l) * l / f3;
  k.dxt = 0.5 * tf.sn * (c * hy.ch * l + l * l - hy.s * hy.s) * l / f3;
  k.dtt = 0.25 * hy.s * ((1.0 + tf.sn * tf.sn) * l + c * hy.ch) * l / (f3 * s);
  return k;
}

}  // namespace bcs::detail
