#pragma once

#include <cmath>
#include <functional>

#include "flrw/quadrature.hpp"

namespace flrw {

/// Newton iteration safeguarded by a bracket [lo, hi] with f(lo) and f(hi)
/// of opposite sign; falls back to bisection whenever a Newton step leaves
/// the bracket or stalls. Returns x with |f(x)| small and bracket width
/// below x_tol * max(1, |x|).
inline double newton_bracketed(const std::function<double(double)>& f,
                               const std::function<double(double)>& df, double lo, double hi,
                               double x_tol = 1e-13, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NumericsError("root find: root not bracketed");
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < max_iter; ++i) {
    double fx = f(x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (fhi > 0.0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    if (hi - lo <= x_tol * std::max(1.0, std::abs(x))) return 0.5 * (lo + hi);
    const double d = df(x);
    double next = x - fx / d;
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

/// Bisection-only variant for functions without a cheap derivative.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double x_tol = 1e-13, int max_iter = 200) {
  return newton_bracketed(f, [](double) { return std::nan(""); }, lo, hi, x_tol, max_iter);
}

}  // namespace flrw
