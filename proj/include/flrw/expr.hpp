#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "flrw/jet.hpp"

namespace flrw {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

/// Expression tree for scalar functions of one variable.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' number)?
///   base   := number | var | func '(' expr ')' | '(' expr ')'
///
/// where func is one of sqrt, exp, log, sinh, cosh, tanh, sin, cos and the
/// exponent after '^' must be a numeric constant.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class UnaryFn { sqrt, exp, log, sinh, cosh, tanh, sin, cos };
enum class BinOp { add, sub, mul, div };

struct Expr {
  enum class Kind { constant, variable, unary, binary, power };

  Kind kind;
  double number = 0.0;  // constant value, or exponent for power
  UnaryFn fn = UnaryFn::sqrt;
  BinOp op = BinOp::add;
  ExprPtr lhs;
  ExprPtr rhs;

  static ExprPtr make_constant(double c);
  static ExprPtr make_variable();
  static ExprPtr make_unary(UnaryFn fn, ExprPtr child);
  static ExprPtr make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr make_power(ExprPtr base, double exponent);
};

/// Parses `source` against the grammar above, with `var` as the variable
/// name. Whitespace-insensitive. Throws ParseError with a byte offset.
ExprPtr parse_expression(std::string_view source, std::string_view var = "t");

/// Prints with minimal parentheses; parse_expression(to_string(e)) is
/// structurally equal to e.
std::string to_string(const Expr& e, std::string_view var = "t");

bool structurally_equal(const Expr& a, const Expr& b);

double eval(const Expr& e, double t);
Jet2 eval_jet(const Expr& e, Jet2 t);

}  // namespace flrw
