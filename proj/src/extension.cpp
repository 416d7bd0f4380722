#include "flrw/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flrw/quadrature.hpp"
#include "flrw/roots.hpp"

namespace flrw {

const char* to_string(Region r) {
  switch (r) {
    case Region::original: return "original";
    case Region::boundary: return "boundary";
    case Region::past: return "past";
  }
  return "?";
}

namespace {

constexpr double kMapTol = 1e-12;

double integral_of_a(const ScaleFactor& sf, double t) {
  if (t == 0.0) return 0.0;
  QuadratureOptions opt;
  opt.abs_tol = kMapTol;
  return integrate([&](double s) { return sf.value(s); }, 0.0, t, opt);
}

// Inverse of ttilde(t) = integral of a from 0; strictly increasing on all
// of R because the continued a stays positive away from t = 0.
double t_of_ttilde(const ScaleFactor& sf, double ttilde) {
  if (ttilde == 0.0) return 0.0;
  auto f = [&](double t) { return integral_of_a(sf, t) - ttilde; };
  double lo = 0.0, hi = 0.0;
  if (ttilde > 0.0) {
    hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
  } else {
    lo = -1.0;
    while (f(lo) > 0.0) lo *= 2.0;
  }
  return newton_bracketed(f, [&](double t) { return sf.value(t); }, lo, hi, 1e-14);
}

double milne_b(const ScaleFactor& sf, double gauge_scale, double t) {
  return gauge_scale * compute_b(sf, t);
}

// Root of b(t) = b_val for strictly increasing b with b -> 0 as t -> 0+.
// b can saturate at a finite supremum (convergent integral of 1/a at
// infinity): b_range_hint, probed once at chart build, rejects such
// points before any bracket expansion.
double t_of_b(const ScaleFactor& sf, double gauge_scale, double b_val, double b_range_hint) {
  if (!(b_val < b_range_hint))
    throw PreconditionError("milne inverse: point outside the image of the chart (b too large)");
  auto f = [&](double t) { return milne_b(sf, gauge_scale, t) - b_val; };
  double hi = 1.0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericsError("milne inverse: bracket expansion failed");
  }
  double lo = hi;
  while (f(lo) > 0.0) {
    lo *= 0.5;
    if (lo < 1e-300) throw NumericsError("milne inverse: b value below range");
  }
  // b' = b / a; near the root b is b_val, good enough for safeguarded Newton.
  return newton_bracketed(f, [&](double t) { return b_val / sf.value(t); }, lo, hi, 1e-14);
}

}  // namespace

ExtensionChart build_2d_null_extension(const ScaleFactor& sf) {
  ExtensionChart chart;
  chart.name = "null2d";
  chart.conformally_flat = false;

  chart.forward = [sf](double t, double x) -> std::array<double, 2> {
    if (!(t > 0.0)) throw PreconditionError("null2d forward: t must be > 0");
    return {integral_of_a(sf, t), x - tau_of_t(sf, t)};
  };
  chart.inverse = [sf](double ttilde, double xtilde) -> std::array<double, 2> {
    const double t = t_of_ttilde(sf, ttilde);
    if (!(t > 0.0)) throw PreconditionError("null2d inverse: point not in the original region");
    return {t, xtilde + tau_of_t(sf, t)};
  };
  chart.region = [](double ttilde, double /*xtilde*/) {
    if (ttilde > 0.0) return Region::original;
    if (ttilde == 0.0) return Region::boundary;
    return Region::past;
  };
  chart.metric = [sf](double ttilde, double /*xtilde*/, int d) {
    if (d != 1) throw PreconditionError("null2d metric: chart is two-dimensional (d = 1)");
    const double a = sf.value(t_of_ttilde(sf, ttilde));
    MetricValue g;
    g.chart = "null2d";
    g.dim = 2;
    g.components = {0.0, 1.0, 1.0, a * a};
    return g;
  };
  chart.forward_jacobian = [sf](double t, double /*x*/) -> std::array<double, 4> {
    const double a = sf.value(t);
    return {a, 0.0, -1.0 / a, 1.0};
  };
  return chart;
}

ExtensionChart build_milne_extension(const ScaleFactor& sf, double gauge_scale) {
  if (!(gauge_scale > 0.0)) throw PreconditionError("milne chart: gauge scale must be positive");
  const MilneReport milne = classify_milne_like(sf);
  if (!milne.is_milne_like)
    throw PreconditionError("milne chart: scale factor is not Milne-like");
  const double bprime0 = gauge_scale * milne.b_prime_limit.value;
  double b_range_hint = std::numeric_limits<double>::infinity();
  try {
    b_range_hint = milne_b(sf, gauge_scale, 1e8);  // finite when 1/a is integrable at infinity
  } catch (const NumericsError&) {
  }

  ExtensionChart chart;
  chart.name = "milne";
  chart.conformally_flat = true;

  chart.forward = [sf, gauge_scale](double t, double r) -> std::array<double, 2> {
    if (!(t > 0.0) || r < 0.0) throw PreconditionError("milne forward: need t > 0, r >= 0");
    const double b = milne_b(sf, gauge_scale, t);
    return {b * std::cosh(r), b * std::sinh(r)};
  };
  chart.region = [](double T, double R) {
    if (R < 0.0) throw PreconditionError("milne region: R must be >= 0");
    if (T > R) return Region::original;
    if (T == R) return Region::boundary;
    return Region::past;
  };
  chart.inverse = [sf, gauge_scale, b_range_hint](double T, double R) -> std::array<double, 2> {
    if (!(T > R) || R < 0.0)
      throw PreconditionError("milne inverse: point not in the original region");
    const double b_val = std::sqrt((T - R) * (T + R));
    const double t = t_of_b(sf, gauge_scale, b_val, b_range_hint);
    return {t, std::atanh(R / T)};
  };
  chart.conformal_factor = [sf, gauge_scale, bprime0, b_range_hint](double T, double R) {
    if (R < 0.0) throw PreconditionError("milne factor: R must be >= 0");
    if (T > R) {
      const double b_val = std::sqrt((T - R) * (T + R));
      const double t = t_of_b(sf, gauge_scale, b_val, b_range_hint);
      const double bprime = b_val / sf.value(t);
      return 1.0 / (bprime * bprime);
    }
    return 1.0 / (bprime0 * bprime0);  // constant continuation across T <= R
  };
  chart.metric = [factor = chart.conformal_factor](double T, double R, int d) {
    const double w = factor(T, R);
    MetricValue g;
    g.chart = "milne";
    g.dim = d + 1;
    g.components.assign(static_cast<std::size_t>(g.dim) * g.dim, 0.0);
    g.at(0, 0) = -w;
    g.at(1, 1) = w;
    for (int i = 2; i <= d; ++i) g.at(i, i) = w * R * R;  // equatorial angles
    return g;
  };
  chart.forward_jacobian = [sf, gauge_scale](double t, double r) -> std::array<double, 4> {
    const double b = milne_b(sf, gauge_scale, t);
    const double bp = b / sf.value(t);
    return {bp * std::cosh(r), b * std::sinh(r), bp * std::sinh(r), b * std::cosh(r)};
  };
  return chart;
}

MilneInverse invert_milne(const ExtensionChart& chart, double T, double R) {
  MilneInverse out;
  out.region = chart.region(T, R);
  if (out.region != Region::original) return out;
  const auto [t, r] = chart.inverse(T, R);
  out.t = t;
  out.r = r;
  return out;
}

double verify_isometry(const ExtensionChart& chart, const ScaleFactor& sf,
                       std::span<const std::array<double, 2>> grid, int d) {
  if (chart.name == "null2d" && d != 1)
    throw PreconditionError("verify_isometry: null2d chart requires d = 1");
  const Geometry geometry = chart.name == "milne" ? Geometry::hyperbolic : Geometry::euclidean;
  double max_residual = 0.0;
  for (const auto& [t, x] : grid) {
    if (t < 1e-9)
      throw PreconditionError("verify_isometry: grid point degenerate (t too close to 0)");
    const auto [u, v] = chart.forward(t, x);
    const auto J = chart.forward_jacobian(t, x);
    const MetricValue ext = chart.metric(u, v, d);
    const MetricValue ref = flrw_metric(sf, geometry, d, t, x);

    // top-left 2x2 block through the differential
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double pulled = 0.0;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) pulled += J[k * 2 + i] * J[l * 2 + j] * ext.at(k, l);
        max_residual = std::max(max_residual, std::abs(pulled - ref.at(i, j)));
      }
    // angular directions map to themselves
    for (int i = 2; i <= d; ++i)
      max_residual = std::max(max_residual, std::abs(ext.at(i, i) - ref.at(i, i)));
  }
  return max_residual;
}

BoundaryDiagnostic boundary_slice_length(const ExtensionChart& chart, const ScaleFactor& sf, int n,
                                         double r_lo, double r_hi, int samples) {
  if (n < 1) throw PreconditionError("boundary slice: n must be >= 1");
  if (!(r_hi > r_lo)) throw PreconditionError("boundary slice: empty r interval");
  const double t = 1.0 / n;

  // Image curve of the slice, with tangents from the chart differential
  // and the extended metric as the line element.
  const double ds = (r_hi - r_lo) / (samples - 1);
  auto integrand = [&](int i) {
    const double r = r_lo + ds * i;
    const auto p = chart.forward(t, r);
    const auto J = chart.forward_jacobian(t, r);
    const double du = J[1], dv = J[3];  // d/dr columns
    const MetricValue g = chart.metric(p[0], p[1], chart.name == "milne" ? 3 : 1);
    const double q = g.at(0, 0) * du * du + 2.0 * g.at(0, 1) * du * dv + g.at(1, 1) * dv * dv;
    return std::sqrt(std::max(0.0, q));
  };
  double len = 0.0;
  double prev = integrand(0);
  for (int i = 1; i < samples; ++i) {
    const double cur = integrand(i);
    len += 0.5 * (prev + cur) * ds;
    prev = cur;
  }

  BoundaryDiagnostic out;
  out.n = n;
  out.slice_length = len;
  out.ratio_to_a = len / sf.value(t);
  return out;
}

}  // namespace flrw
