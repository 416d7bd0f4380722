#include "flrw/scale_factor.hpp"

namespace flrw {

ScaleFactor ScaleFactor::parse(std::string_view source) {
  ScaleFactor sf;
  sf.ast_ = parse_expression(source, "t");
  sf.source_ = std::string(source);
  return sf;
}

ScaleFactor ScaleFactor::with_past_extension(std::string_view source) const {
  ScaleFactor sf = *this;
  sf.past_ast_ = parse_expression(source, "t");
  sf.past_ = PastExtension::custom;
  return sf;
}

double ScaleFactor::value(double t) const {
  if (t > 0.0 || (t == 0.0 && past_ == PastExtension::even_reflection)) return eval(*ast_, t);
  if (past_ == PastExtension::even_reflection) return eval(*ast_, -t);
  return eval(*past_ast_, t);
}

Jet2 ScaleFactor::jet(double t) const {
  if (t > 0.0 || (t == 0.0 && past_ == PastExtension::even_reflection))
    return eval_jet(*ast_, Jet2::variable(t));
  if (past_ == PastExtension::even_reflection) {
    Jet2 j = eval_jet(*ast_, Jet2::variable(-t));
    return {j.v, -j.d1, j.d2};
  }
  return eval_jet(*past_ast_, Jet2::variable(t));
}

GaugeFunction GaugeFunction::parse(std::string_view source) {
  GaugeFunction f;
  f.ast_ = parse_expression(source, "s");
  f.source_ = std::string(source);
  return f;
}

}  // namespace flrw
