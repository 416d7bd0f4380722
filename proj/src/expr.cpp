#include "flrw/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

namespace flrw {

ExprPtr Expr::make_constant(double c) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::constant;
  e->number = c;
  return e;
}

ExprPtr Expr::make_variable() {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::variable;
  return e;
}

ExprPtr Expr::make_unary(UnaryFn fn, ExprPtr child) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::unary;
  e->fn = fn;
  e->lhs = std::move(child);
  return e;
}

ExprPtr Expr::make_binary(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::binary;
  e->op = op;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

ExprPtr Expr::make_power(ExprPtr base, double exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::power;
  e->number = exponent;
  e->lhs = std::move(base);
  return e;
}

namespace {

struct FnName {
  std::string_view name;
  UnaryFn fn;
};

constexpr std::array<FnName, 8> kFunctions = {{
    {"sqrt", UnaryFn::sqrt},
    {"exp", UnaryFn::exp},
    {"log", UnaryFn::log},
    {"sinh", UnaryFn::sinh},
    {"cosh", UnaryFn::cosh},
    {"tanh", UnaryFn::tanh},
    {"sin", UnaryFn::sin},
    {"cos", UnaryFn::cos},
}};

std::string_view fn_name(UnaryFn fn) {
  for (const auto& f : kFunctions)
    if (f.fn == fn) return f.name;
  return "?";
}

class Parser {
 public:
  Parser(std::string_view src, std::string_view var) : src_(src), var_(var) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view src_;
  std::string_view var_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  double number() {
    skip_ws();
    double value = 0.0;
    auto [end, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), value);
    if (ec != std::errc{} || end == src_.data() + pos_) fail("expected number");
    pos_ = static_cast<std::size_t>(end - src_.data());
    return value;
  }

  std::string_view identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return src_.substr(start, pos_ - start);
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (true) {
      if (eat('+'))
        e = Expr::make_binary(BinOp::add, e, term());
      else if (eat('-'))
        e = Expr::make_binary(BinOp::sub, e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (true) {
      if (eat('*'))
        e = Expr::make_binary(BinOp::mul, e, factor());
      else if (eat('/'))
        e = Expr::make_binary(BinOp::div, e, factor());
      else
        return e;
    }
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (eat('^')) {
      skip_ws();
      char c = peek();
      if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.')
        fail("exponent must be a numeric constant");
      return Expr::make_power(b, number());
    }
    return b;
  }

  ExprPtr base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Expr::make_constant(number());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      std::string_view id = identifier();
      if (id == var_) return Expr::make_variable();
      for (const auto& f : kFunctions) {
        if (id == f.name) {
          if (!eat('(')) fail("expected '(' after function name");
          ExprPtr arg = expr();
          if (!eat(')')) fail("expected ')'");
          return Expr::make_unary(f.fn, arg);
        }
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(id) + "'");
    }
    fail("expected expression");
  }
};

std::string format_number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

// precedence: add 1, mul 2, power 3, atoms 4
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::binary:
      return (e.op == BinOp::add || e.op == BinOp::sub) ? 1 : 2;
    case Expr::Kind::power:
      return 3;
    default:
      return 4;
  }
}

void print(const Expr& e, std::string_view var, std::string& out) {
  auto child = [&](const Expr& c, int min_prec) {
    if (precedence(c) < min_prec) {
      out += '(';
      print(c, var, out);
      out += ')';
    } else {
      print(c, var, out);
    }
  };
  switch (e.kind) {
    case Expr::Kind::constant:
      out += format_number(e.number);
      return;
    case Expr::Kind::variable:
      out += var;
      return;
    case Expr::Kind::unary:
      out += fn_name(e.fn);
      out += '(';
      print(*e.lhs, var, out);
      out += ')';
      return;
    case Expr::Kind::binary: {
      const int p = precedence(e);
      child(*e.lhs, p);
      switch (e.op) {
        case BinOp::add: out += " + "; break;
        case BinOp::sub: out += " - "; break;
        case BinOp::mul: out += "*"; break;
        case BinOp::div: out += "/"; break;
      }
      // left-associative grammar: a right child at equal precedence
      // needs parentheses to round-trip structurally
      child(*e.rhs, p + 1);
      return;
    }
    case Expr::Kind::power:
      child(*e.lhs, 4);
      out += '^';
      out += format_number(e.number);
      return;
  }
}

}  // namespace

ExprPtr parse_expression(std::string_view source, std::string_view var) {
  return Parser(source, var).run();
}

std::string to_string(const Expr& e, std::string_view var) {
  std::string out;
  print(e, var, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::constant:
      return a.number == b.number;
    case Expr::Kind::variable:
      return true;
    case Expr::Kind::unary:
      return a.fn == b.fn && structurally_equal(*a.lhs, *b.lhs);
    case Expr::Kind::binary:
      return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) &&
             structurally_equal(*a.rhs, *b.rhs);
    case Expr::Kind::power:
      return a.number == b.number && structurally_equal(*a.lhs, *b.lhs);
  }
  return false;
}

double eval(const Expr& e, double t) {
  switch (e.kind) {
    case Expr::Kind::constant:
      return e.number;
    case Expr::Kind::variable:
      return t;
    case Expr::Kind::unary: {
      const double x = eval(*e.lhs, t);
      switch (e.fn) {
        case UnaryFn::sqrt:
          if (x < 0.0) throw EvalError("sqrt of negative value");
          return std::sqrt(x);
        case UnaryFn::exp: return std::exp(x);
        case UnaryFn::log:
          if (x <= 0.0) throw EvalError("log of non-positive value");
          return std::log(x);
        case UnaryFn::sinh: return std::sinh(x);
        case UnaryFn::cosh: return std::cosh(x);
        case UnaryFn::tanh: return std::tanh(x);
        case UnaryFn::sin: return std::sin(x);
        case UnaryFn::cos: return std::cos(x);
      }
      break;
    }
    case Expr::Kind::binary: {
      const double a = eval(*e.lhs, t);
      const double b = eval(*e.rhs, t);
      switch (e.op) {
        case BinOp::add: return a + b;
        case BinOp::sub: return a - b;
        case BinOp::mul: return a * b;
        case BinOp::div:
          if (b == 0.0) throw EvalError("division by zero");
          return a / b;
      }
      break;
    }
    case Expr::Kind::power: {
      const double x = eval(*e.lhs, t);
      if (x < 0.0 && std::nearbyint(e.number) != e.number)
        throw EvalError("fractional power of negative value");
      return std::pow(x, e.number);
    }
  }
  throw EvalError("malformed expression tree");
}

Jet2 eval_jet(const Expr& e, Jet2 t) {
  switch (e.kind) {
    case Expr::Kind::constant:
      return Jet2::constant(e.number);
    case Expr::Kind::variable:
      return t;
    case Expr::Kind::unary: {
      const Jet2 x = eval_jet(*e.lhs, t);
      switch (e.fn) {
        case UnaryFn::sqrt: return sqrt(x);
        case UnaryFn::exp: return exp(x);
        case UnaryFn::log: return log(x);
        case UnaryFn::sinh: return sinh(x);
        case UnaryFn::cosh: return cosh(x);
        case UnaryFn::tanh: return tanh(x);
        case UnaryFn::sin: return sin(x);
        case UnaryFn::cos: return cos(x);
      }
      break;
    }
    case Expr::Kind::binary: {
      const Jet2 a = eval_jet(*e.lhs, t);
      const Jet2 b = eval_jet(*e.rhs, t);
      switch (e.op) {
        case BinOp::add: return a + b;
        case BinOp::sub: return a - b;
        case BinOp::mul: return a * b;
        case BinOp::div: return a / b;
      }
      break;
    }
    case Expr::Kind::power:
      return pow(eval_jet(*e.lhs, t), e.number);
  }
  throw EvalError("malformed expression tree");
}

}  // namespace flrw
