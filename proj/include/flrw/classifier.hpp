#pragma once

#include "flrw/limits.hpp"
#include "flrw/scale_factor.hpp"

namespace flrw {

enum class Geometry { euclidean, hyperbolic };

const char* to_string(Geometry g);
Geometry geometry_from_string(std::string_view s);

struct SublinearFit {
  double m = 0.0;  // slope of the dominating line, from the t >= 1 part of the sample
  double b = 0.0;  // least offset making a(t) <= m t + b on the whole sample
  bool holds = false;
  double growth_exponent = 0.0;  // log2(a(t_max) / a(t_max / 2))
};

struct FlrwReport {
  Geometry geometry = Geometry::hyperbolic;
  LimitEstimate cond_a0_zero;     // a(t) -> 0 as t -> 0+
  SublinearFit cond_sublinear;    // a(t) <= m t + b on the sampled range
  bool cond_a_prime_positive = false;
  bool smoothness_assumed = true;  // not numerically verifiable
  bool overall = false;
};

struct MilneReport {
  LimitEstimate a_prime_limit;  // must equal 1
  bool integral_diverges = false;
  LimitEstimate b_prime_limit;  // must be finite and positive
  bool is_milne_like = false;
  bool inconclusive = false;
};

/// Checks the open-FLRW scale-factor conditions. The sublinear-growth
/// check is sample-based on (0, t_max] and can only certify the sampled
/// range: it fits a dominating line from the data and rejects factors
/// whose right-edge growth exponent exceeds 2.5 (superquadratic).
FlrwReport check_open_flrw(const ScaleFactor& sf, Geometry geometry, double t_max = 100.0,
                           const LimitOptions& lo = {});

/// True when I(eps) = integral of 1/a over [eps, 1] keeps growing as eps
/// halves: increments bounded below by 0.05 across the trailing 6 halvings.
bool integral_one_over_a_diverges(const ScaleFactor& sf);

/// b(t) = exp(integral of 1/a from t_ref to t); the gauge is fixed by
/// b(t_ref) = 1 and changing t_ref rescales b by a positive constant.
double compute_b(const ScaleFactor& sf, double t, double t_ref = 1.0);

/// Milne-like test: a'(0+) = 1, divergent integral of 1/a near 0, and
/// b'(0+) finite positive, with b'(0+) evaluated as the limit of b/a.
MilneReport classify_milne_like(const ScaleFactor& sf, const LimitOptions& lo = {});

}  // namespace flrw
