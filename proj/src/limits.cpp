#include "flrw/limits.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "flrw/jet.hpp"
#include "flrw/quadrature.hpp"

namespace flrw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Extrapolation {
  double value = 0.0;
  double error = kInf;
};

Extrapolation richardson(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<double> prev(f), cur(n);
  double diag_prev = f.back();
  Extrapolation best{f.back(), kInf};
  for (int j = 1; j < n; ++j) {
    const double w = std::exp2(static_cast<double>(j));
    for (int k = j; k < n; ++k) cur[k] = (w * prev[k] - prev[k - 1]) / (w - 1.0);
    const double diag = cur[n - 1];
    if (std::isfinite(diag)) {
      const double err = std::abs(diag - diag_prev) + std::abs(diag - cur[n - 2 >= j ? n - 2 : j]);
      if (err < best.error) best = {diag, err};
      diag_prev = diag;
    }
    std::swap(prev, cur);
  }
  return best;
}

Extrapolation aitken(std::vector<double> s) {
  Extrapolation best{s.back(), kInf};
  if (s.size() >= 2) best.error = std::abs(s.back() - s[s.size() - 2]);
  for (int pass = 0; pass < 4 && s.size() >= 3; ++pass) {
    std::vector<double> next;
    next.reserve(s.size() - 2);
    for (std::size_t k = 0; k + 2 < s.size(); ++k) {
      const double d2 = s[k + 2] - 2.0 * s[k + 1] + s[k];
      if (d2 == 0.0 || !std::isfinite(d2)) {
        next.push_back(s[k + 2]);
        continue;
      }
      next.push_back(s[k + 2] - (s[k + 2] - s[k + 1]) * (s[k + 2] - s[k + 1]) / d2);
    }
    if (next.size() < 2) break;
    const double err =
        std::abs(next.back() - next[next.size() - 2]) + std::abs(next.back() - s.back()) * 0.25;
    if (std::isfinite(next.back()) && err < best.error) best = {next.back(), err};
    s = std::move(next);
  }
  return best;
}

// Step ratios d_k/d_{k-1} over the trailing 5 samples must agree with the
// last ratio within 25% and stay below 0.95 in magnitude. A tail whose
// last step sits at the rounding floor counts as converged.
bool tail_looks_convergent(const std::vector<double>& s) {
  const int n = static_cast<int>(s.size());
  const int window = std::min(5, n);
  const double noise = 1e-12 * std::max(1.0, std::abs(s.back()));
  std::vector<double> d;
  for (int k = n - window + 1; k < n; ++k) d.push_back(s[k] - s[k - 1]);
  if (std::abs(d.back()) <= noise) return true;
  for (double v : d)
    if (std::abs(v) <= noise) return false;
  const double q = d.back() / d[d.size() - 2];
  if (!(std::abs(q) <= 0.95)) return false;
  for (std::size_t k = 1; k < d.size(); ++k)
    if (std::abs(d[k] / d[k - 1] - q) > 0.25 * std::max(std::abs(q), 0.05)) return false;
  return true;
}

// |f| strictly increasing across a trailing window with cumulative growth
// >= 1.5. A short window catches power-law divergence; the half-length
// window catches logarithmic rates.
bool diverging(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  if (std::abs(f.back()) < 1.0) return false;
  for (int window : {5, n / 2 + 1}) {
    if (window < 5 || window > n) continue;
    bool monotone = true;
    for (int k = n - window + 1; k < n; ++k)
      if (std::abs(f[k]) <= std::abs(f[k - 1])) {
        monotone = false;
        break;
      }
    if (monotone && std::abs(f[n - 1]) >= 1.5 * std::abs(f[n - window])) return true;
  }
  return false;
}

}  // namespace

LimitEstimate limit_at_zero(const std::function<double(double)>& f, const LimitOptions& opt) {
  LimitEstimate out;
  std::vector<double> samples;
  samples.reserve(opt.levels);
  double t = opt.t0;
  for (int k = 0; k < opt.levels; ++k, t *= 0.5) {
    double v;
    try {
      v = f(t);
    } catch (const EvalError&) {
      break;  // evaluation failures at deep levels leave a shorter sequence
    } catch (const NumericsError&) {
      break;
    }
    if (!std::isfinite(v)) break;
    samples.push_back(v);
  }
  out.samples_used = static_cast<int>(samples.size());
  if (out.samples_used < 4) return out;  // never assert from fewer than 4 levels

  // Divergence is decided from the raw samples before any extrapolation:
  // Aitken maps a growing geometric sequence onto its fixed point and
  // would otherwise report a confident bogus limit.
  if (diverging(samples)) {
    out.value = samples.back() > 0.0 ? kInf : -kInf;
    out.error_estimate = kInf;
    out.verdict = LimitVerdict::infinite;
    return out;
  }

  bool constant = true;
  for (double v : samples)
    if (v != samples.front()) constant = false;
  Extrapolation ex;
  if (constant) {
    ex = {samples.front(), 0.0};
  } else {
    Extrapolation r = richardson(samples);
    Extrapolation a = aitken(samples);
    // Internal differences of an extrapolation table are estimates, not
    // bounds; oscillatory-modulated decay can stabilize them on a bogus
    // value with a tiny claimed error. Gate on the raw tail: consecutive
    // step ratios over the trailing window must be stable (the sequence
    // looks geometrically convergent) before any extrapolant is trusted.
    if (!tail_looks_convergent(samples)) {
      r.error = kInf;
      a.error = kInf;
    }
    const double last = samples.back();
    const double noise = 1e-12 * std::max(1.0, std::abs(last));
    for (Extrapolation* e : {&r, &a})
      if (std::abs(e->value - last) > std::max(std::abs(e->value - samples.front()), noise))
        e->error = kInf;
    ex = (a.error < r.error) ? a : r;
  }

  if (ex.error <= opt.tol && std::isfinite(ex.value)) {
    out.value = ex.value;
    out.error_estimate = ex.error;
    out.verdict = std::abs(ex.value) <= opt.tol ? LimitVerdict::zero : LimitVerdict::finite;
    return out;
  }
  out.value = ex.value;
  out.error_estimate = ex.error;
  out.verdict = LimitVerdict::inconclusive;
  return out;
}

const char* to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::finite: return "finite";
    case LimitVerdict::infinite: return "infinite";
    case LimitVerdict::zero: return "zero";
    case LimitVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace flrw
