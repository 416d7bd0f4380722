#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace flrw {

struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;  // termination uses max(abs_tol, rel_tol * |local integral|)
  long max_subdivisions = 1L << 20;
};

namespace detail {

struct SimpsonState {
  const std::function<double(double)>& f;
  long budget;
  double rel_tol;
};

inline double simpson(double lo, double hi, double flo, double fmid, double fhi) {
  return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
}

inline double adapt(SimpsonState& st, double lo, double hi, double flo, double fmid, double fhi,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (lo + hi);
  const double fl = st.f(0.5 * (lo + m));
  const double fr = st.f(0.5 * (m + hi));
  if (!std::isfinite(fl) || !std::isfinite(fr))
    throw NumericsError("quadrature: integrand not finite");
  const double left = simpson(lo, m, flo, fl, fmid);
  const double right = simpson(m, hi, fmid, fr, fhi);
  const double delta = left + right - whole;
  const double tol_eff = std::max(tol, st.rel_tol * std::abs(left + right));
  if (depth > 0 && std::abs(delta) <= 15.0 * tol_eff) return left + right + delta / 15.0;
  // endpoint-singular integrands refine geometrically into the corner, so
  // the depth cap must exceed log2(interval / corner scale)
  if (depth > 200 || --st.budget <= 0)
    throw NumericsError("quadrature: subdivision limit reached");
  return adapt(st, lo, m, flo, fl, fmid, left, 0.5 * tol, depth + 1) +
         adapt(st, m, hi, fmid, fr, fhi, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [lo, hi] (sign-aware when lo > hi).
inline double integrate(const std::function<double(double)>& f, double lo, double hi,
                        QuadratureOptions opt = {}) {
  if (lo == hi) return 0.0;
  double sign = 1.0;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  const double flo = f(lo), fhi = f(hi), fmid = f(0.5 * (lo + hi));
  if (!std::isfinite(flo) || !std::isfinite(fhi) || !std::isfinite(fmid))
    throw NumericsError("quadrature: integrand not finite at initial nodes");
  detail::SimpsonState st{f, opt.max_subdivisions, opt.rel_tol};
  const double whole = detail::simpson(lo, hi, flo, fmid, fhi);
  return sign * detail::adapt(st, lo, hi, flo, fmid, fhi, whole, opt.abs_tol, 0);
}

}  // namespace flrw
