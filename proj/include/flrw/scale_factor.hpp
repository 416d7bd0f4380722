#pragma once

#include <string>
#include <string_view>

#include "flrw/expr.hpp"

namespace flrw {

enum class PastExtension { even_reflection, custom };

/// A scale factor a(t) defined by an expression on t > 0, together with a
/// rule for continuing it to t <= 0. Immutable after construction and safe
/// to share across threads; all evaluation is pure.
///
/// The default continuation is the even reflection a(-t) := a(t), which is
/// continuous with a(0) = 0 whenever a vanishes at the origin. Jets at
/// t = 0 are the one-sided jets from t -> 0+.
class ScaleFactor {
 public:
  static ScaleFactor parse(std::string_view source);

  /// Replaces the continuation for t <= 0 with a custom expression in t.
  ScaleFactor with_past_extension(std::string_view source) const;

  double value(double t) const;
  Jet2 jet(double t) const;

  const std::string& source() const { return source_; }
  PastExtension past_extension() const { return past_; }
  const Expr& ast() const { return *ast_; }

 private:
  ScaleFactor() = default;

  ExprPtr ast_;
  ExprPtr past_ast_;  // only for PastExtension::custom
  std::string source_;
  PastExtension past_ = PastExtension::even_reflection;
};

inline ScaleFactor parse_scale_factor(std::string_view source) { return ScaleFactor::parse(source); }
inline Jet2 evaluate_jet(const ScaleFactor& sf, double t) { return sf.jet(t); }

/// Gauge function f(s) in the same grammar with variable name "s";
/// used to fix the time coordinate of spherically symmetric charts.
class GaugeFunction {
 public:
  static GaugeFunction parse(std::string_view source);
  static GaugeFunction identity() { return parse("s"); }

  double value(double s) const { return eval(*ast_, s); }
  Jet2 jet(double s) const { return eval_jet(*ast_, Jet2::variable(s)); }
  double derivative(double s) const { return jet(s).d1; }

  const std::string& source() const { return source_; }

 private:
  GaugeFunction() = default;

  ExprPtr ast_;
  std::string source_;
};

}  // namespace flrw
