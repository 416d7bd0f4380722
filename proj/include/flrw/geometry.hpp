#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "flrw/classifier.hpp"
#include "flrw/scale_factor.hpp"

namespace flrw {

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Symmetric metric components at a point of a named coordinate chart.
/// Convention throughout: d is the spatial dimension, the spacetime
/// dimension is d + 1, and coordinates are (t, r, theta_1..theta_{d-1}).
struct MetricValue {
  std::string chart;
  int dim = 0;
  std::vector<double> components;  // row-major dim x dim, symmetric

  double at(int i, int j) const { return components[i * dim + j]; }
  double& at(int i, int j) { return components[i * dim + j]; }

  /// Exactly one negative eigenvalue (checked with a Jacobi sweep).
  bool lorentzian_signature() const;
};

/// FLRW metric at (t, r) with all angles at the equator. The full metric
/// as a function of every coordinate (needed by stencil-based curvature
/// checks) is flrw_metric_at.
MetricValue flrw_metric(const ScaleFactor& sf, Geometry geometry, int d, double t, double r);
MetricValue flrw_metric_at(const ScaleFactor& sf, Geometry geometry, int d,
                           std::span<const double> x);

/// Scalar curvature. d = 1 reduces to 2 a''/a regardless of geometry; for
/// d >= 2 the hyperbolic and Euclidean forms differ by the d(d-1)/a^2
/// spatial-curvature term.
double scalar_curvature(const ScaleFactor& sf, Geometry geometry, int d, double t);

/// Conformal time tau(t) = integral of 1/a from c to t, and its inverse.
double tau_of_t(const ScaleFactor& sf, double t, double c = 1.0);
double t_of_tau(const ScaleFactor& sf, double tau, double c = 1.0);

/// A sampled curve in a named chart. Charts understood by the length and
/// lift routines: "flrw" with coordinates (t, r [, angles...]) and
/// "conformal" with coordinates (tau, x_1..x_k) measured in the unit
/// conformal metric -dtau^2 + flat spatial metric.
struct CurvePath {
  std::string chart = "conformal";
  std::vector<double> params;               // strictly increasing
  std::vector<std::vector<double>> points;  // one coordinate tuple per param

  void validate() const;
};

/// Reads rows "param, coord_0, ..., coord_d"; a non-numeric first line is
/// treated as a header.
CurvePath curve_path_from_csv(std::istream& in, std::string chart = "conformal");

/// Length of a timelike sampled curve: trapezoid rule over sqrt(-g(v,v))
/// with central-difference tangents (one-sided at the ends). Throws,
/// naming the parameter value, if any sample is not timelike.
double lorentzian_length(const ScaleFactor& sf, Geometry geometry, const CurvePath& curve);

struct DistanceBound {
  double tau0 = 0.0;
  double T = 0.0;
  double d_h = 0.0;
  double bound = 0.0;  // sqrt((T - tau0)^2 - d_h^2)
};

DistanceBound distance_lower_bound(double tau0, double T, double d_h);

struct LiftCheckReport {
  int samples_checked = 0;
  double max_lift_speed = 0.0;
  double max_curve_speed = 0.0;
  bool all_timelike = false;    // every straight-segment lift has speed < 1
  bool speed_bound_ok = false;  // lift speed <= arc length / elapsed tau at every sample
};

/// For each sample s of a timelike curve in conformal coordinates with a
/// flat spatial part, forms the straight-segment lift from the start point
/// to the sample and verifies that its conformal speed is below both 1 and
/// the arc-length bound. Flat geometry only: minimizing spatial geodesics
/// must be straight segments.
LiftCheckReport geodesic_lift_check(Geometry geometry, const CurvePath& curve);

}  // namespace flrw
