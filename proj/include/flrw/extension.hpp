#pragma once

#include <array>
#include <functional>
#include <span>

#include "flrw/geometry.hpp"

namespace flrw {

enum class Region { original, boundary, past };

const char* to_string(Region r);

/// A boundary chart: coordinates in which the metric stays continuous
/// through t = 0. Two charts are built here,
///
///   "null2d":  (t, x) -> (ttilde, xtilde) with ttilde = integral of a
///              from 0 to t and xtilde = x - tau(t); the extended metric
///              2 dttilde dxtilde + a^2 dxtilde^2 has det = -1 everywhere
///              and the boundary is the null line ttilde = 0.
///   "milne":   (t, r) -> (T, R) = b(t)(cosh r, sinh r), conformally flat
///              with factor 1/b'(t(T,R))^2 on T > R, continued with the
///              constant factor 1/b'(0+)^2 across T <= R.
///
/// Maps, metric and region evaluators are pure and the chart is immutable.
struct ExtensionChart {
  std::string name;
  bool conformally_flat = false;

  std::function<std::array<double, 2>(double, double)> forward;  // original -> extension coords
  std::function<std::array<double, 2>(double, double)> inverse;  // throws outside the original region
  std::function<Region(double, double)> region;
  std::function<MetricValue(double, double, int)> metric;  // at extension coords, spatial dim d
  std::function<double(double, double)> conformal_factor;  // only when conformally_flat
  // Analytic differential d(extension)/d(original) at original coords,
  // row-major [du/dt, du/dx, dv/dt, dv/dx].
  std::function<std::array<double, 4>(double, double)> forward_jacobian;
};

/// Null-coordinate chart for a two-dimensional scale factor (d = 1); a is
/// continued past t = 0 by the scale factor's past-extension rule.
ExtensionChart build_2d_null_extension(const ScaleFactor& sf);

/// (T, R) chart for a Milne-like scale factor. b carries the gauge
/// b(1) = 1 scaled by gauge_scale; rejects inputs that do not classify
/// Milne-like. gauge_scale only rescales coordinates, not the geometry.
ExtensionChart build_milne_extension(const ScaleFactor& sf, double gauge_scale = 1.0);

struct MilneInverse {
  Region region = Region::original;
  double t = 0.0;  // valid only when region == original
  double r = 0.0;
};

/// b = sqrt(T^2 - R^2), t by monotone root-find, r = artanh(R/T); points
/// with T <= R come back tagged with their region instead of coordinates.
MilneInverse invert_milne(const ExtensionChart& chart, double T, double R);

/// Pulls the extended metric back through the chart differential on a grid
/// of original-coordinate points and compares with the FLRW metric
/// componentwise; returns the max absolute residual. d must be 1 for the
/// null2d chart.
double verify_isometry(const ExtensionChart& chart, const ScaleFactor& sf,
                       std::span<const std::array<double, 2>> grid, int d);

struct BoundaryDiagnostic {
  int n = 0;
  double slice_length = 0.0;
  double ratio_to_a = 0.0;
};

/// Length of the image of {t = 1/n} x [r_lo, r_hi] under the chart,
/// measured with the extended metric; ratio_to_a divides by a(1/n).
BoundaryDiagnostic boundary_slice_length(const ExtensionChart& chart, const ScaleFactor& sf, int n,
                                         double r_lo, double r_hi, int samples = 257);

}  // namespace flrw
