#pragma once

#include <utility>
#include <vector>

#include "flrw/geometry.hpp"

namespace flrw {

/// A metric coefficient that may sit on the degeneracy curve; singular
/// evaluations are tagged instead of thrown so sweeps can plot across it.
struct SssValue {
  double value = 0.0;
  bool singular = false;
};

/// Strongly-spherically-symmetric chart (T, R) for an FLRW scale factor,
/// parameterized by a gauge function f with nonvanishing derivative:
///
///   Euclidean:   R = r a,       T = f(r^2/2 + Q(t)),        G = 1/(1 - r^2 a'^2)
///   hyperbolic:  R = sinh(r) a, T = f(ln cosh(r) + Q(t)),   G = 1/(cosh^2 r - sinh^2 r a'^2)
///
/// with Q(t) the integral of 1/(a a') from 1 to t and F = G (a a'/f')^2
/// (times cosh^2 r in the hyperbolic case). The chart degenerates where
/// the transformation Jacobian vanishes (r^2 a'^2 = 1 in the Euclidean
/// case); T and R change causal character across that curve.
class SssChart {
 public:
  SssChart(Geometry geometry, ScaleFactor sf, GaugeFunction gauge);

  Geometry geometry() const { return geometry_; }
  const ScaleFactor& scale_factor() const { return sf_; }
  const GaugeFunction& gauge() const { return gauge_; }

  double radius(double r, double t) const;      // R
  double s_arg(double r, double t) const;       // argument of f
  double time_coord(double r, double t) const;  // T = f(s)
  SssValue metric_G(double r, double t) const;
  SssValue metric_F(double r, double t) const;
  double jacobian(double r, double t) const;

  /// |1 - r^2 a'^2| (or the hyperbolic analog scaled by cosh^2 r);
  /// the chart is degenerate where this vanishes.
  double degeneracy_margin(double r, double t) const;

 private:
  double q_integral(double t) const;  // Q(t)

  Geometry geometry_;
  ScaleFactor sf_;
  GaugeFunction gauge_;
};

SssChart sss_euclidean(const ScaleFactor& sf, GaugeFunction f = GaugeFunction::identity());
SssChart sss_hyperbolic(const ScaleFactor& sf, GaugeFunction f = GaugeFunction::identity());

/// Residual of the three algebraic identities tying (F, G, T, R) to the
/// FLRW metric, with T and R derivatives taken by forward-mode jets.
/// Throws if any grid point comes within `margin` (in r) of the
/// degeneracy curve.
double verify_sss_identities(const SssChart& chart, std::span<const double> r_values,
                             std::span<const double> t_values, double margin = 1e-3);

/// Samples (t, r*(t)) with r* = 1/a'(t) and checks J(r*, t) = 0 there.
/// Returns pairs (t, r*); max |J| on the samples is written to
/// max_jacobian when given. Euclidean chart only.
std::vector<std::pair<double, double>> degeneracy_curve(const ScaleFactor& sf,
                                                        const GaugeFunction& f, double t_lo,
                                                        double t_hi, int samples,
                                                        double* max_jacobian = nullptr);

/// Limit of |G| along the curve of fixed area-radius R as t -> 0+.
LimitEstimate g_limit_along_R(const ScaleFactor& sf, Geometry geometry, double R_fixed,
                              const LimitOptions& lo = {});

/// Divergence diagnostics along fixed R in the Euclidean chart: s -> inf,
/// the induced s^2 f'(s)^2 limit, |T| = |f(s)| -> inf, and the two
/// supporting limits a/a' -> 0 and a^2 Q(t) -> 0.
struct SssDivergenceReport {
  LimitEstimate s_limit;
  LimitEstimate sfprime_sq_limit;
  LimitEstimate t_coord_limit;
  LimitEstimate a_over_aprime_limit;
  LimitEstimate a2_integral_limit;
  bool s_diverges = false;
  bool t_diverges = false;
};

SssDivergenceReport s_and_T_divergence(const ScaleFactor& sf, const GaugeFunction& f,
                                       double R_fixed, const LimitOptions& lo = {});

}  // namespace flrw
