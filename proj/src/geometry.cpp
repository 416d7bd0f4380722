#include "flrw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "flrw/quadrature.hpp"
#include "flrw/roots.hpp"

namespace flrw {

bool MetricValue::lorentzian_signature() const {
  // Jacobi eigenvalue sweeps on a copy; dim is tiny.
  std::vector<double> a(components);
  const int n = dim;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double theta = 0.5 * std::atan2(2.0 * apq, a[q * n + q] - a[p * n + p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
  }
  int negative = 0;
  for (int i = 0; i < n; ++i)
    if (a[i * n + i] < 0.0) ++negative;
  return negative == 1;
}

MetricValue flrw_metric_at(const ScaleFactor& sf, Geometry geometry, int d,
                           std::span<const double> x) {
  if (d < 1) throw PreconditionError("flrw metric: d must be >= 1");
  if (static_cast<int>(x.size()) != d + 1)
    throw PreconditionError("flrw metric: expected d + 1 coordinates");
  const double t = x[0], r = x[1];
  if (!(t > 0.0)) throw PreconditionError("flrw metric: t must be > 0");
  // d = 1 has a Cartesian spatial coordinate; r is radial only for d >= 2
  if (d >= 2 && r < 0.0) throw PreconditionError("flrw metric: r must be >= 0");
  const double a2 = sf.value(t) * sf.value(t);
  const double rho = geometry == Geometry::euclidean ? r : std::sinh(r);

  MetricValue g;
  g.chart = "flrw";
  g.dim = d + 1;
  g.components.assign(static_cast<std::size_t>(g.dim) * g.dim, 0.0);
  g.at(0, 0) = -1.0;
  g.at(1, 1) = a2;
  double angular = a2 * rho * rho;
  for (int i = 2; i <= d; ++i) {
    g.at(i, i) = angular;
    const double s = std::sin(x[i]);
    angular *= s * s;
  }
  return g;
}

MetricValue flrw_metric(const ScaleFactor& sf, Geometry geometry, int d, double t, double r) {
  std::vector<double> x(static_cast<std::size_t>(d) + 1, std::acos(0.0));  // angles pi/2
  x[0] = t;
  x[1] = r;
  return flrw_metric_at(sf, geometry, d, x);
}

double scalar_curvature(const ScaleFactor& sf, Geometry geometry, int d, double t) {
  if (d < 1) throw PreconditionError("scalar curvature: d must be >= 1");
  const Jet2 a = sf.jet(t);
  if (d == 1) return 2.0 * a.d2 / a.v;
  const double h = a.d1 / a.v;  // a'/a
  if (geometry == Geometry::hyperbolic)
    return -d * (d - 1) / (a.v * a.v) + 2.0 * d * h * h + 2.0 * d * a.d2 / a.v +
           (d * d - 3 * d) * h * h;
  return 2.0 * d * a.d2 / a.v + d * (d - 1) * h * h;
}

double tau_of_t(const ScaleFactor& sf, double t, double c) {
  if (!(t > 0.0) || !(c > 0.0)) throw PreconditionError("tau_of_t: t, c must be > 0");
  return integrate([&](double s) { return 1.0 / sf.value(s); }, c, t);
}

double t_of_tau(const ScaleFactor& sf, double tau, double c) {
  if (!(c > 0.0)) throw PreconditionError("t_of_tau: c must be > 0");
  auto f = [&](double t) { return tau_of_t(sf, t, c) - tau; };
  // tau is strictly increasing in t; expand a bracket around c. The range
  // of tau can be bounded on either side (convergent integral of 1/a), so
  // expansion is capped and overshoot reports out-of-range.
  double lo = c, hi = c;
  double flo = -tau, fhi = -tau;  // tau_of_t(c) == 0
  while (fhi < 0.0) {
    if (hi > 1e12) throw PreconditionError("t_of_tau: tau above the range of tau_of_t");
    hi *= 2.0;
    fhi = f(hi);
  }
  while (flo > 0.0) {
    if (lo < 1e-30) throw PreconditionError("t_of_tau: tau below the range of tau_of_t");
    lo *= 0.5;
    flo = f(lo);
  }
  return newton_bracketed(f, [&](double t) { return 1.0 / sf.value(t); }, lo, hi, 1e-14);
}

void CurvePath::validate() const {
  if (params.size() != points.size()) throw PreconditionError("curve: params/points size mismatch");
  if (params.size() < 2) throw PreconditionError("curve: need at least 2 samples");
  const std::size_t ncoord = points.front().size();
  if (ncoord < 2) throw PreconditionError("curve: points need a time and a space coordinate");
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (points[i].size() != ncoord) throw PreconditionError("curve: ragged point dimensions");
    if (i > 0 && !(params[i] > params[i - 1]))
      throw PreconditionError("curve: parameter must be strictly increasing");
  }
}

CurvePath curve_path_from_csv(std::istream& in, std::string chart) {
  CurvePath c;
  c.chart = std::move(chart);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (first && line.find_first_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ") !=
                     std::string::npos) {
      first = false;
      continue;  // header row
    }
    first = false;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() < 3) throw PreconditionError("curve csv: need param plus >= 2 coordinates");
    c.params.push_back(row[0]);
    c.points.emplace_back(row.begin() + 1, row.end());
  }
  c.validate();
  return c;
}

namespace {

// g(u, v) in the curve's chart at the given point. "conformal" is the unit
// conformal metric; "flrw" accepts (t, r) or (t, r, angles...) tuples.
double metric_product(const ScaleFactor& sf, Geometry geometry, const std::string& chart,
                      const std::vector<double>& x, const std::vector<double>& u,
                      const std::vector<double>& v) {
  const std::size_t n = x.size();
  if (chart == "conformal") {
    double out = -u[0] * v[0];
    for (std::size_t i = 1; i < n; ++i) out += u[i] * v[i];
    return out;
  }
  if (chart != "flrw") throw PreconditionError("unknown curve chart '" + chart + "'");
  const double a2 = sf.value(x[0]) * sf.value(x[0]);
  const double rho = geometry == Geometry::euclidean ? x[1] : std::sinh(x[1]);
  double out = -u[0] * v[0] + a2 * u[1] * v[1];
  double angular = a2 * rho * rho;
  for (std::size_t i = 2; i < n; ++i) {
    out += angular * u[i] * v[i];
    const double s = std::sin(x[i]);
    angular *= s * s;
  }
  return out;
}

std::vector<std::vector<double>> tangents(const CurvePath& c) {
  const std::size_t n = c.params.size();
  const std::size_t m = c.points.front().size();
  std::vector<std::vector<double>> v(n, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? i : i + 1;
    const double dp = c.params[hi] - c.params[lo];
    for (std::size_t k = 0; k < m; ++k) v[i][k] = (c.points[hi][k] - c.points[lo][k]) / dp;
  }
  return v;
}

}  // namespace

double lorentzian_length(const ScaleFactor& sf, Geometry geometry, const CurvePath& curve) {
  curve.validate();
  const auto v = tangents(curve);
  const std::size_t n = curve.params.size();
  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = metric_product(sf, geometry, curve.chart, curve.points[i], v[i], v[i]);
    if (!(q < 0.0))
      throw PreconditionError("curve not timelike at parameter " +
                              std::to_string(curve.params[i]));
    integrand[i] = std::sqrt(-q);
  }
  double len = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    len += 0.5 * (integrand[i] + integrand[i - 1]) * (curve.params[i] - curve.params[i - 1]);
  return len;
}

DistanceBound distance_lower_bound(double tau0, double T, double d_h) {
  if (!(T > tau0)) throw PreconditionError("distance bound: requires T > tau0");
  if (d_h < 0.0 || d_h >= T - tau0)
    throw PreconditionError("distance bound: requires 0 <= d_h < T - tau0 (timelike separation)");
  const double dt = T - tau0;
  return {tau0, T, d_h, std::sqrt(dt * dt - d_h * d_h)};
}

LiftCheckReport geodesic_lift_check(Geometry geometry, const CurvePath& curve) {
  if (geometry != Geometry::euclidean)
    throw PreconditionError("geodesic lift check: flat spatial geometry only");
  if (curve.chart != "conformal")
    throw PreconditionError("geodesic lift check: curve must be in conformal coordinates");
  curve.validate();

  const std::size_t n = curve.params.size();
  const std::size_t m = curve.points.front().size();
  const double tau0 = curve.points.front()[0];

  LiftCheckReport rep;
  rep.all_timelike = true;
  rep.speed_bound_ok = true;

  // The input curve must itself be timelike: spatial speed below 1.
  double arc = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double dtau = curve.points[i][0] - curve.points[i - 1][0];
    if (!(dtau > 0.0))
      throw PreconditionError("geodesic lift check: tau coordinate must increase");
    double dx2 = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
      const double d = curve.points[i][k] - curve.points[i - 1][k];
      dx2 += d * d;
    }
    const double seg = std::sqrt(dx2);
    rep.max_curve_speed = std::max(rep.max_curve_speed, seg / dtau);
    if (!(seg < dtau))
      throw PreconditionError("geodesic lift check: input curve not timelike at parameter " +
                              std::to_string(curve.params[i]));
    arc += seg;

    // Straight-segment lift from the start to sample i: constant speed
    // chord / elapsed conformal time.
    double chord2 = 0.0;
    for (std::size_t k = 1; k < m; ++k) {
      const double d = curve.points[i][k] - curve.points.front()[k];
      chord2 += d * d;
    }
    const double elapsed = curve.points[i][0] - tau0;
    const double speed = std::sqrt(chord2) / elapsed;
    rep.max_lift_speed = std::max(rep.max_lift_speed, speed);
    if (!(speed < 1.0)) rep.all_timelike = false;
    if (speed > arc / elapsed * (1.0 + 1e-12)) rep.speed_bound_ok = false;
    ++rep.samples_checked;
  }
  return rep;
}

}  // namespace flrw
