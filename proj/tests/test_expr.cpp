#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "flrw/expr.hpp"
#include "flrw/rng.hpp"
#include "flrw/scale_factor.hpp"

using namespace flrw;

TEST_CASE("parser evaluates basic expressions") {
  CHECK(eval(*parse_expression("t"), 2.0) == 2.0);
  CHECK(eval(*parse_expression("t + t^2"), 2.0) == 6.0);
  CHECK(eval(*parse_expression("2*t^3"), 2.0) == 16.0);  // ^ binds tighter than *
  CHECK(eval(*parse_expression("tanh(t)"), 0.0) == 0.0);
  CHECK(eval(*parse_expression("exp(t) - 1"), 0.0) == 0.0);
  CHECK(eval(*parse_expression("1 + 0*t"), 7.0) == 1.0);
  CHECK(eval(*parse_expression(" t +\tt ^ 2 "), 2.0) == 6.0);
  CHECK(eval(*parse_expression("(t + 1)/(t + 2)"), 0.0) == doctest::Approx(0.5));
  CHECK(eval(*parse_expression("1.5e1"), 0.0) == 15.0);
}

TEST_CASE("parser reports errors with byte offsets") {
  CHECK_THROWS_WITH_AS(parse_expression("tanh("), "expected expression at offset 5", ParseError);
  CHECK_THROWS_AS(parse_expression(""), ParseError);
  CHECK_THROWS_AS(parse_expression("(t"), ParseError);
  CHECK_THROWS_AS(parse_expression("2t"), ParseError);  // no implicit multiplication

  try {
    parse_expression("foo(t)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 0);
    CHECK(std::string(e.what()).find("unknown identifier") != std::string::npos);
  }
  try {
    parse_expression("t^t");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
    CHECK(std::string(e.what()).find("numeric constant") != std::string::npos);
  }
}

TEST_CASE("evaluation domain errors") {
  const auto neg_sqrt = parse_expression("sqrt(0 - t)");
  CHECK_THROWS_AS(eval(*neg_sqrt, 1.0), EvalError);
  CHECK_THROWS_AS(eval(*parse_expression("1/(t - t)"), 3.0), EvalError);
  CHECK_THROWS_AS(eval(*parse_expression("log(t - 1)"), 1.0), EvalError);
  CHECK_THROWS_AS(eval_jet(*neg_sqrt, Jet2::variable(1.0)), EvalError);
}

TEST_CASE("jets match analytic derivatives") {
  auto jet_of = [](const char* src, double t) {
    return eval_jet(*parse_expression(src), Jet2::variable(t));
  };
  Jet2 j = jet_of("tanh(t)", 0.0);
  CHECK(j.v == 0.0);
  CHECK(j.d1 == 1.0);
  CHECK(j.d2 == 0.0);

  j = jet_of("t + t^2", 1.0);
  CHECK(j.v == 2.0);
  CHECK(j.d1 == 3.0);
  CHECK(j.d2 == 2.0);

  j = jet_of("sqrt(t)", 1.0);
  CHECK(j.v == 1.0);
  CHECK(j.d1 == 0.5);
  CHECK(j.d2 == -0.25);

  j = jet_of("exp(t)/t", 1.0);  // f' = 0, f'' = e at t = 1
  CHECK(j.v == doctest::Approx(std::exp(1.0)));
  CHECK(j.d1 == doctest::Approx(0.0));
  CHECK(j.d2 == doctest::Approx(std::exp(1.0)));

  j = jet_of("sin(t)*cos(t)", 0.7);  // = sin(2t)/2
  CHECK(j.v == doctest::Approx(0.5 * std::sin(1.4)));
  CHECK(j.d1 == doctest::Approx(std::cos(1.4)));
  CHECK(j.d2 == doctest::Approx(-2.0 * std::sin(1.4)));
}

namespace {

ExprPtr random_ast(Rng& rng, int depth) {
  const int pick = depth <= 0 ? rng.uniform_int(0, 1) : rng.uniform_int(0, 9);
  switch (pick) {
    case 0:
      return Expr::make_constant(0.25 * rng.uniform_int(1, 16));
    case 1:
      return Expr::make_variable();
    case 2:
    case 3: {
      const UnaryFn fns[] = {UnaryFn::sqrt, UnaryFn::exp, UnaryFn::log, UnaryFn::sinh,
                             UnaryFn::cosh, UnaryFn::tanh, UnaryFn::sin, UnaryFn::cos};
      return Expr::make_unary(fns[rng.uniform_int(0, 7)], random_ast(rng, depth - 1));
    }
    case 4:
      return Expr::make_power(random_ast(rng, depth - 1), 0.5 * rng.uniform_int(1, 6));
    default: {
      const BinOp ops[] = {BinOp::add, BinOp::sub, BinOp::mul, BinOp::div};
      return Expr::make_binary(ops[rng.uniform_int(0, 3)], random_ast(rng, depth - 1),
                               random_ast(rng, depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("grammar round-trips: parse(print(ast)) == ast") {
  Rng rng(20240);
  for (int i = 0; i < 400; ++i) {
    const ExprPtr ast = random_ast(rng, 4);
    const std::string printed = to_string(*ast);
    CAPTURE(printed);
    const ExprPtr reparsed = parse_expression(printed);
    CHECK(structurally_equal(*ast, *reparsed));
  }
}

TEST_CASE("malformed inputs fail with structured errors, never crash") {
  Rng rng(99);
  const std::string alphabet = "t0123456789+-*/^()sqrtexplogsinhcoshtanh .";
  for (int i = 0; i < 800; ++i) {
    std::string s;
    const int len = rng.uniform_int(0, 24);
    for (int k = 0; k < len; ++k) s += alphabet[rng.uniform_int(0, (int)alphabet.size() - 1)];
    try {
      auto ast = parse_expression(s);
      (void)to_string(*ast);
    } catch (const ParseError& e) {
      CHECK(e.offset <= s.size());
    }
  }
}

TEST_CASE("first derivative is consistent with central differences") {
  // |jet.d1 - central_difference| should shrink like h^2.
  Rng rng(7);
  int checked = 0;
  for (int i = 0; i < 300 && checked < 120; ++i) {
    const ExprPtr ast = random_ast(rng, 3);
    const double t = rng.uniform(0.4, 2.0);
    try {
      const Jet2 j = eval_jet(*ast, Jet2::variable(t));
      if (!std::isfinite(j.v) || !std::isfinite(j.d1)) continue;
      if (std::abs(j.v) > 1e6 || std::abs(j.d1) > 1e6) continue;
      auto fd = [&](double h) { return (eval(*ast, t + h) - eval(*ast, t - h)) / (2.0 * h); };
      const double e1 = std::abs(fd(1e-3) - j.d1);
      const double e2 = std::abs(fd(5e-4) - j.d1);
      const double noise = 1e-10 * std::max(1.0, std::abs(j.d1));
      if (e1 > noise) CHECK(e2 <= 0.35 * e1 + noise);  // |fd - d1| <= C h^2
      ++checked;
    } catch (const EvalError&) {
      // random tree not defined near t; skip
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("scale factor past extension") {
  const ScaleFactor sf = ScaleFactor::parse("t + t^2");

  SUBCASE("even reflection matches values and flips odd derivatives") {
    for (double t : {0.25, 1.0, 2.5}) {
      CHECK(sf.value(-t) == sf.value(t));
      CHECK(sf.jet(-t).d1 == -sf.jet(t).d1);
      CHECK(sf.jet(-t).d2 == sf.jet(t).d2);
    }
    CHECK(sf.value(0.0) == 0.0);
    CHECK(sf.jet(0.0).d1 == 1.0);  // one-sided jet at the origin
  }

  SUBCASE("custom continuation") {
    const ScaleFactor ext = sf.with_past_extension("0 - t");
    CHECK(ext.past_extension() == PastExtension::custom);
    CHECK(ext.value(-2.0) == 2.0);
    CHECK(ext.jet(-2.0).d1 == -1.0);
    CHECK(ext.value(1.0) == 2.0);  // t > 0 unchanged
  }
}

TEST_CASE("scale factor positivity on samples") {
  for (const char* src : {"t", "sqrt(t)", "t + t^2", "tanh(t)"}) {
    const ScaleFactor sf = ScaleFactor::parse(src);
    for (double t = 0.01; t < 50.0; t *= 1.7) CHECK(sf.value(t) > 0.0);
  }
}

TEST_CASE("gauge functions use the variable s") {
  const GaugeFunction f = GaugeFunction::parse("s + s^3");
  CHECK(f.value(2.0) == 10.0);
  CHECK(f.derivative(2.0) == 13.0);
  CHECK(GaugeFunction::identity().derivative(123.0) == 1.0);
  CHECK_THROWS_AS(GaugeFunction::parse("t"), ParseError);  // wrong variable name
}
