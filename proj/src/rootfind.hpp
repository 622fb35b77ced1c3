#pragma once

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "bcs/errors.hpp"
#include "bcs/gapcore.hpp"

namespace bcs::detail {

struct RootOutcome {
  double x;
  double fx;
  int iterations;
};

/// Bracketed root of f on [a, b] given f(a), f(b) of opposite sign. The
/// bracket is shrunk by TOMS 748 until its relative width reaches
/// cfg.x_rel_tol; the endpoint with the smaller |f| is returned.
template <class F>
RootOutcome bracketed_root(F&& f, double a, double b, double fa, double fb, const RootConfig& cfg,
                           const char* what) {
  if (fa == 0.0) return {a, fa, 0};
  if (fb == 0.0) return {b, fb, 0};
  if (std::signbit(fa) == std::signbit(fb))
    throw RootError(std::string(what) + ": root is not bracketed");

  const double rel = cfg.x_rel_tol;
  auto done = [rel](double lo, double hi) {
    return std::abs(hi - lo) <= rel * std::max(std::abs(lo), std::abs(hi));
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(cfg.max_iter);
  const auto bracket = boost::math::tools::toms748_solve(f, a, b, fa, fb, done, iters);
  const int used = static_cast<int>(iters);

  const double lo = bracket.first;
  const double hi = bracket.second;
  const double flo = f(lo);
  if (lo == hi) return {lo, flo, used};
  const double fhi = f(hi);
  const bool pick_lo = std::abs(flo) <= std::abs(fhi);
  RootOutcome out{pick_lo ? lo : hi, pick_lo ? flo : fhi, used};
  if (!done(lo, hi) && std::abs(out.fx) > cfg.abs_tol)
    throw RootError(std::string(what) + ": iteration limit reached");
  return out;
}

}  // namespace bcs::detail
