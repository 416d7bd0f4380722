#include "flrw/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "flrw/quadrature.hpp"

namespace flrw {

const char* to_string(Geometry g) {
  return g == Geometry::euclidean ? "euclidean" : "hyperbolic";
}

Geometry geometry_from_string(std::string_view s) {
  if (s == "euclidean") return Geometry::euclidean;
  if (s == "hyperbolic") return Geometry::hyperbolic;
  throw std::invalid_argument("unknown geometry '" + std::string(s) + "'");
}

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> ts(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    ts[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (n - 1));
  ts.back() = hi;
  return ts;
}

}  // namespace

FlrwReport check_open_flrw(const ScaleFactor& sf, Geometry geometry, double t_max,
                           const LimitOptions& lo) {
  FlrwReport rep;
  rep.geometry = geometry;
  rep.cond_a0_zero = limit_at_zero([&](double t) { return sf.value(t); }, lo);

  const auto ts = log_spaced(t_max * 1e-6, t_max, 256);
  SublinearFit& fit = rep.cond_sublinear;
  fit.growth_exponent = std::log2(sf.value(t_max) / sf.value(0.5 * t_max));
  fit.m = 0.0;
  for (double t : ts)
    if (t >= std::min(1.0, 0.5 * t_max)) fit.m = std::max(fit.m, sf.value(t) / t);
  fit.b = 0.0;
  for (double t : ts) fit.b = std::max(fit.b, sf.value(t) - fit.m * t);
  fit.holds = fit.growth_exponent < 2.5 && fit.m > 0.0;

  // a' > 0 sampled; an exact floating zero (e.g. tanh saturating to 1.0
  // beyond t ~ 19) counts as saturation, not failure, as long as the
  // factor grows across the sample.
  rep.cond_a_prime_positive = sf.value(t_max) > sf.value(ts.front());
  for (double t : ts)
    if (sf.jet(t).d1 < 0.0) {
      rep.cond_a_prime_positive = false;
      break;
    }

  rep.overall = rep.cond_a0_zero.verdict == LimitVerdict::zero && fit.holds &&
                rep.cond_a_prime_positive;
  return rep;
}

bool integral_one_over_a_diverges(const ScaleFactor& sf) {
  // Increments I(eps/2) - I(eps) over dyadic intervals [2^-(k+1), 2^-k].
  constexpr int kHalvings = 20;
  constexpr int kWindow = 6;
  constexpr double kFloor = 0.05;
  int consecutive = 0;
  double hi = 1.0;
  for (int k = 0; k < kHalvings; ++k) {
    const double lo_end = 0.5 * hi;
    const double inc = integrate([&](double t) { return 1.0 / sf.value(t); }, lo_end, hi);
    consecutive = inc >= kFloor ? consecutive + 1 : 0;
    hi = lo_end;
  }
  return consecutive >= kWindow;
}

double compute_b(const ScaleFactor& sf, double t, double t_ref) {
  if (!(t > 0.0) || !(t_ref > 0.0)) throw std::invalid_argument("compute_b: t, t_ref must be > 0");
  QuadratureOptions opt;
  opt.abs_tol = 1e-13;  // b feeds conformal-factor comparisons at 1e-9
  opt.rel_tol = 1e-12;  // keeps steep integrands (a ~ t^2) within budget
  return std::exp(integrate([&](double s) { return 1.0 / sf.value(s); }, t_ref, t, opt));
}

MilneReport classify_milne_like(const ScaleFactor& sf, const LimitOptions& lo) {
  MilneReport rep;
  rep.a_prime_limit = limit_at_zero([&](double t) { return sf.jet(t).d1; }, lo);
  rep.integral_diverges = integral_one_over_a_diverges(sf);
  // b'(0+) as the limit of b/a, which equals b' identically.
  rep.b_prime_limit = limit_at_zero([&](double t) { return compute_b(sf, t) / sf.value(t); }, lo);

  const bool a_prime_one = rep.a_prime_limit.verdict == LimitVerdict::finite &&
                           std::abs(rep.a_prime_limit.value - 1.0) <= lo.tol;
  const bool b_prime_ok = rep.b_prime_limit.verdict == LimitVerdict::finite &&
                          rep.b_prime_limit.value > 0.0;
  rep.inconclusive = rep.a_prime_limit.verdict == LimitVerdict::inconclusive ||
                     rep.b_prime_limit.verdict == LimitVerdict::inconclusive;
  rep.is_milne_like = a_prime_one && rep.integral_diverges && b_prime_ok;
  return rep;
}

}  // namespace flrw
