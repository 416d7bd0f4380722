#include "flrw/sss.hpp"

#include <algorithm>
#include <cmath>

#include "flrw/quadrature.hpp"

namespace flrw {

SssChart::SssChart(Geometry geometry, ScaleFactor sf, GaugeFunction gauge)
    : geometry_(geometry), sf_(std::move(sf)), gauge_(std::move(gauge)) {}

double SssChart::q_integral(double t) const {
  return integrate(
      [this](double u) {
        const Jet2 a = sf_.jet(u);
        return 1.0 / (a.v * a.d1);
      },
      1.0, t);
}

double SssChart::radius(double r, double t) const {
  const double a = sf_.value(t);
  return geometry_ == Geometry::euclidean ? r * a : std::sinh(r) * a;
}

double SssChart::s_arg(double r, double t) const {
  const double spatial =
      geometry_ == Geometry::euclidean ? 0.5 * r * r : std::log(std::cosh(r));
  return spatial + q_integral(t);
}

double SssChart::time_coord(double r, double t) const { return gauge_.value(s_arg(r, t)); }

double SssChart::degeneracy_margin(double r, double t) const {
  const Jet2 a = sf_.jet(t);
  if (geometry_ == Geometry::euclidean) return std::abs(1.0 - r * r * a.d1 * a.d1);
  const double ch = std::cosh(r), sh = std::sinh(r);
  return std::abs(ch * ch - sh * sh * a.d1 * a.d1) / (ch * ch);
}

SssValue SssChart::metric_G(double r, double t) const {
  const Jet2 a = sf_.jet(t);
  double denom;
  if (geometry_ == Geometry::euclidean) {
    denom = 1.0 - r * r * a.d1 * a.d1;
  } else {
    const double ch = std::cosh(r), sh = std::sinh(r);
    denom = ch * ch - sh * sh * a.d1 * a.d1;
  }
  if (std::abs(denom) < 1e-12) return {1.0 / denom, true};
  return {1.0 / denom, false};
}

SssValue SssChart::metric_F(double r, double t) const {
  const SssValue g = metric_G(r, t);
  const Jet2 a = sf_.jet(t);
  const double fp = gauge_.derivative(s_arg(r, t));
  const double ratio = a.v * a.d1 / fp;
  double f = g.value * ratio * ratio;
  if (geometry_ == Geometry::hyperbolic) {
    const double ch = std::cosh(r);
    f *= ch * ch;
  }
  return {f, g.singular};
}

double SssChart::jacobian(double r, double t) const {
  const Jet2 a = sf_.jet(t);
  const double fp = gauge_.derivative(s_arg(r, t));
  if (geometry_ == Geometry::euclidean) return fp * (r * r * a.d1 - 1.0 / a.d1);
  const double ch = std::cosh(r), sh = std::sinh(r);
  // T_r R_t - T_t R_r with T_r = f' tanh r, T_t = f'/(a a'), R = a sinh r
  return fp * (sh / ch * sh * a.d1 - ch / a.d1);
}

SssChart sss_euclidean(const ScaleFactor& sf, GaugeFunction f) {
  return SssChart(Geometry::euclidean, sf, std::move(f));
}

SssChart sss_hyperbolic(const ScaleFactor& sf, GaugeFunction f) {
  return SssChart(Geometry::hyperbolic, sf, std::move(f));
}

double verify_sss_identities(const SssChart& chart, std::span<const double> r_values,
                             std::span<const double> t_values, double margin) {
  const ScaleFactor& sf = chart.scale_factor();
  double max_residual = 0.0;
  for (double t : t_values) {
    const Jet2 a = sf.jet(t);
    if (!(a.d1 > 0.0))
      throw PreconditionError("sss identities: a' must be positive on the grid");
    const double r_degenerate = 1.0 / a.d1;  // Euclidean curve; hyperbolic analog below
    for (double r : r_values) {
      if (chart.geometry() == Geometry::euclidean) {
        if (std::abs(r - r_degenerate) < margin)
          throw PreconditionError("sss identities: grid touches the degeneracy curve");
      } else if (chart.degeneracy_margin(r, t) < margin) {
        throw PreconditionError("sss identities: grid touches the degeneracy curve");
      }
      const double fp = chart.gauge().jet(chart.s_arg(r, t)).d1;
      const double F = chart.metric_F(r, t).value;
      const double G = chart.metric_G(r, t).value;

      double T_t, T_r, R_t, R_r, g_rr;
      if (chart.geometry() == Geometry::euclidean) {
        T_t = fp / (a.v * a.d1);
        T_r = fp * r;
        R_t = r * a.d1;
        R_r = a.v;
        g_rr = a.v * a.v;
      } else {
        const double ch = std::cosh(r), sh = std::sinh(r);
        T_t = fp / (a.v * a.d1);
        T_r = fp * sh / ch;
        R_t = sh * a.d1;
        R_r = ch * a.v;
        g_rr = a.v * a.v;
      }
      // -dt^2 + a^2 dr^2 block of the FLRW metric against -F dT^2 + G dR^2
      const double id1 = (-F * T_t * T_t + G * R_t * R_t) - (-1.0);
      const double id2 = -F * T_t * T_r + G * R_t * R_r;
      const double id3 = (-F * T_r * T_r + G * R_r * R_r) - g_rr;
      max_residual = std::max({max_residual, std::abs(id1), std::abs(id2), std::abs(id3)});
    }
  }
  return max_residual;
}

std::vector<std::pair<double, double>> degeneracy_curve(const ScaleFactor& sf,
                                                        const GaugeFunction& f, double t_lo,
                                                        double t_hi, int samples,
                                                        double* max_jacobian) {
  if (!(t_hi >= t_lo) || t_lo < 0.0 || samples < 1)
    throw PreconditionError("degeneracy curve: bad t range");
  const SssChart chart = sss_euclidean(sf, f);
  std::vector<std::pair<double, double>> curve;
  curve.reserve(samples);
  double max_j = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t =
        samples == 1 ? t_lo : t_lo + (t_hi - t_lo) * static_cast<double>(i) / (samples - 1);
    const double r_star = 1.0 / sf.jet(t).d1;
    curve.emplace_back(t, r_star);
    if (t > 0.0) max_j = std::max(max_j, std::abs(chart.jacobian(r_star, t)));
  }
  if (max_jacobian) *max_jacobian = max_j;
  return curve;
}

LimitEstimate g_limit_along_R(const ScaleFactor& sf, Geometry geometry, double R_fixed,
                              const LimitOptions& lo) {
  if (!(R_fixed > 0.0)) throw PreconditionError("g limit: R must be > 0");
  if (geometry == Geometry::euclidean) {
    return limit_at_zero(
        [&](double t) {
          const Jet2 a = sf.jet(t);
          const double q = R_fixed * a.d1 / a.v;  // r a' at r = R/a
          return std::abs(1.0 / (1.0 - q * q));
        },
        lo);
  }
  // Closed form in R: G = a^2 / (R^2 (1 - a'^2) + a^2).
  return limit_at_zero(
      [&](double t) {
        const Jet2 a = sf.jet(t);
        return std::abs(a.v * a.v /
                        (R_fixed * R_fixed * (1.0 - a.d1 * a.d1) + a.v * a.v));
      },
      lo);
}

SssDivergenceReport s_and_T_divergence(const ScaleFactor& sf, const GaugeFunction& f,
                                       double R_fixed, const LimitOptions& lo) {
  if (!(R_fixed > 0.0)) throw PreconditionError("divergence diagnostics: R must be > 0");
  const SssChart chart = sss_euclidean(sf, f);

  auto s_of_t = [&](double t) {
    const double a = sf.value(t);
    return chart.s_arg(R_fixed / a, t);
  };
  // Reject gauges whose derivative vanishes on the sampled s range.
  double t = lo.t0;
  for (int k = 0; k < lo.levels; ++k, t *= 0.5) {
    if (f.jet(s_of_t(t)).d1 == 0.0)
      throw PreconditionError("divergence diagnostics: gauge derivative vanishes on range");
  }

  SssDivergenceReport rep;
  rep.s_limit = limit_at_zero(s_of_t, lo);
  rep.sfprime_sq_limit = limit_at_zero(
      [&](double u) {
        const double s = s_of_t(u);
        const double fp = f.jet(s).d1;
        return s * s * fp * fp;
      },
      lo);
  rep.t_coord_limit = limit_at_zero([&](double u) { return std::abs(f.value(s_of_t(u))); }, lo);
  rep.a_over_aprime_limit = limit_at_zero(
      [&](double u) {
        const Jet2 a = sf.jet(u);
        return a.v / a.d1;
      },
      lo);
  rep.a2_integral_limit = limit_at_zero(
      [&](double u) {
        const double a = sf.value(u);
        return a * a * (s_of_t(u) - R_fixed * R_fixed / (2.0 * a * a));  // a^2 Q(t)
      },
      lo);
  rep.s_diverges = rep.s_limit.verdict == LimitVerdict::infinite && rep.s_limit.value > 0.0;
  rep.t_diverges = rep.t_coord_limit.verdict == LimitVerdict::infinite;
  return rep;
}

}  // namespace flrw
