#pragma once

#include <functional>

namespace flrw {

enum class LimitVerdict { finite, infinite, zero, inconclusive };

struct LimitEstimate {
  double value = 0.0;          // +-infinity when verdict == infinite
  double error_estimate = 0.0; // +infinity when verdict == infinite
  LimitVerdict verdict = LimitVerdict::inconclusive;
  int samples_used = 0;
};

struct LimitOptions {
  double t0 = 0.5;
  int levels = 12;
  double tol = 1e-6;
};

/// One-sided limit of f(t) as t -> 0+ from samples at t_k = t0 * 2^-k.
///
/// The finite/zero verdicts come from sequence extrapolation (Richardson on
/// the diagonal plus iterated Aitken delta-squared, whichever stabilizes
/// better); they require the error estimate to drop below tol. The infinite
/// verdict requires |f| to grow monotonically across the trailing levels
/// with cumulative growth factor >= 1.5. Verdicts are never asserted from
/// fewer than 4 levels.
LimitEstimate limit_at_zero(const std::function<double(double)>& f, const LimitOptions& opt = {});

const char* to_string(LimitVerdict v);

}  // namespace flrw
