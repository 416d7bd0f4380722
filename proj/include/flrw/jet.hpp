#pragma once

#include <cmath>
#include <stdexcept>

namespace flrw {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Second-order jet (value, first and second derivative with respect to
/// one independent variable). Arithmetic propagates derivatives exactly
/// via the product/quotient/chain rules.
struct Jet2 {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  static constexpr Jet2 variable(double t) { return {t, 1.0, 0.0}; }
  static constexpr Jet2 constant(double c) { return {c, 0.0, 0.0}; }
};

constexpr Jet2 operator+(Jet2 a, Jet2 b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
constexpr Jet2 operator-(Jet2 a, Jet2 b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
constexpr Jet2 operator-(Jet2 a) { return {-a.v, -a.d1, -a.d2}; }

constexpr Jet2 operator*(Jet2 a, Jet2 b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

inline Jet2 operator/(Jet2 a, Jet2 b) {
  if (b.v == 0.0) throw EvalError("division by zero");
  const double v = a.v / b.v;
  const double d1 = (a.d1 - v * b.d1) / b.v;
  const double d2 = (a.d2 - 2.0 * d1 * b.d1 - v * b.d2) / b.v;
  return {v, d1, d2};
}

constexpr Jet2 operator*(double c, Jet2 a) { return {c * a.v, c * a.d1, c * a.d2}; }
constexpr Jet2 operator+(Jet2 a, double c) { return {a.v + c, a.d1, a.d2}; }

// u(f) with u', u'' evaluated at f.v
constexpr Jet2 chain(double u, double du, double ddu, Jet2 f) {
  return {u, du * f.d1, ddu * f.d1 * f.d1 + du * f.d2};
}

inline Jet2 sqrt(Jet2 f) {
  if (f.v < 0.0) throw EvalError("sqrt of negative value");
  const double s = std::sqrt(f.v);
  return chain(s, 0.5 / s, -0.25 / (f.v * s), f);
}

inline Jet2 exp(Jet2 f) {
  const double e = std::exp(f.v);
  return chain(e, e, e, f);
}

inline Jet2 log(Jet2 f) {
  if (f.v <= 0.0) throw EvalError("log of non-positive value");
  return chain(std::log(f.v), 1.0 / f.v, -1.0 / (f.v * f.v), f);
}

inline Jet2 sinh(Jet2 f) { return chain(std::sinh(f.v), std::cosh(f.v), std::sinh(f.v), f); }
inline Jet2 cosh(Jet2 f) { return chain(std::cosh(f.v), std::sinh(f.v), std::cosh(f.v), f); }

inline Jet2 tanh(Jet2 f) {
  const double th = std::tanh(f.v);
  const double sech2 = 1.0 - th * th;
  return chain(th, sech2, -2.0 * th * sech2, f);
}

inline Jet2 sin(Jet2 f) { return chain(std::sin(f.v), std::cos(f.v), -std::sin(f.v), f); }
inline Jet2 cos(Jet2 f) { return chain(std::cos(f.v), -std::sin(f.v), -std::cos(f.v), f); }

// Power with constant exponent only; keeps the jet single-valued.
inline Jet2 pow(Jet2 f, double p) {
  if (p == 0.0) return Jet2::constant(1.0);
  if (p == 1.0) return f;
  if (f.v < 0.0 && std::nearbyint(p) != p)
    throw EvalError("fractional power of negative value");
  const double u = std::pow(f.v, p);
  return chain(u, p * std::pow(f.v, p - 1.0), p * (p - 1.0) * std::pow(f.v, p - 2.0), f);
}

}  // namespace flrw
