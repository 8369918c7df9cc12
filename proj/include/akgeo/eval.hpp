#pragma once

// Numeric evaluation of expressions at a point. Evaluation is pure; an
// Evaluator memoizes per (point, node), so shared subtrees across e.g. all
// curvature components are computed once per point.

#include "akgeo/expr.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <unordered_map>

namespace akgeo {

using ComplexValue = std::complex<double>;

struct Point {
  std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};
  std::map<std::string, double> params;

  static Point at(double x1, double x2, double x3, double x4) {
    return Point{{x1, x2, x3, x4}, {}};
  }
  Point with(const std::string& name, double value) const {
    Point p = *this;
    p.params[name] = value;
    return p;
  }
  Point shifted(int axis, double delta) const {
    Point p = *this;
    p.x[axis - 1] += delta;
    return p;
  }
};

namespace detail {

// A base counts as positive-real when its imaginary part is rounding noise.
inline bool positive_real(ComplexValue v, double* out) {
  if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real()))) return false;
  *out = v.real();
  return v.real() > 0.0;
}

inline ComplexValue ipow(ComplexValue z, long n) {
  if (n < 0) {
    if (z == ComplexValue(0.0)) throw EvalError(EvalError::Kind::DivisionByZero, "0 raised to a negative power");
    return 1.0 / ipow(z, -n);
  }
  ComplexValue acc = 1.0;
  while (n) {
    if (n & 1) acc *= z;
    z *= z;
    n >>= 1;
  }
  return acc;
}

}  // namespace detail

class Evaluator {
 public:
  explicit Evaluator(const Point& point) : point_(point) {}

  ComplexValue operator()(const Expression& e) { return eval(e); }

  double real(const Expression& e) { return eval(e).real(); }

  const Point& point() const { return point_; }

 private:
  ComplexValue eval(const Expression& e) {
    auto it = memo_.find(e.ptr().get());
    if (it != memo_.end()) return it->second;
    ComplexValue v = eval_node(e);
    memo_.emplace(e.ptr().get(), v);
    return v;
  }

  ComplexValue eval_node(const Expression& e) {
    const ExprNode& n = e.node();
    switch (n.kind) {
      case NodeKind::Constant:
        return n.capprox;
      case NodeKind::Coordinate:
        return point_.x[n.coord - 1];
      case NodeKind::Parameter: {
        auto it = point_.params.find(n.param);
        if (it == point_.params.end())
          throw EvalError(EvalError::Kind::UnboundParameter, "unbound parameter '" + n.param + "'");
        return it->second;
      }
      case NodeKind::Sum: {
        ComplexValue acc = 0.0;
        for (const Expression& k : n.kids) acc += eval(k);
        return acc;
      }
      case NodeKind::Product: {
        ComplexValue acc = 1.0;
        for (const Expression& k : n.kids) acc *= eval(k);
        return acc;
      }
      case NodeKind::Quotient: {
        ComplexValue den = eval(n.kids[1]);
        if (den == ComplexValue(0.0))
          throw EvalError(EvalError::Kind::DivisionByZero,
                          "division by zero in " + brief(n.kids[1]));
        return eval(n.kids[0]) / den;
      }
      case NodeKind::Power: {
        ComplexValue base = eval(n.kids[0]);
        if (is_integer(n.expo)) return detail::ipow(base, n.expo.convert_to<long>());
        double re = 0.0;
        if (!detail::positive_real(base, &re))
          throw EvalError(EvalError::Kind::DomainViolation,
                          "non-positive base of rational power in " + brief(e));
        return std::pow(re, to_double(n.expo));
      }
      case NodeKind::Exp:
        return std::exp(eval(n.kids[0]));
      case NodeKind::Log: {
        ComplexValue arg = eval(n.kids[0]);
        double re = 0.0;
        if (!detail::positive_real(arg, &re))
          throw EvalError(EvalError::Kind::DomainViolation,
                          "non-positive argument of log in " + brief(e));
        return std::log(re);
      }
    }
    return 0.0;
  }

  static std::string brief(const Expression& e) {
    std::string s = to_string(e);
    if (s.size() > 80) s = s.substr(0, 77) + "...";
    return s;
  }

  const Point& point_;
  std::unordered_map<const ExprNode*, ComplexValue> memo_;
};

inline ComplexValue evaluate(const Expression& e, const Point& p) {
  Evaluator ev(p);
  ComplexValue v = ev(e);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvalError(EvalError::Kind::NonFinite, "evaluation produced a non-finite value");
  return v;
}

}  // namespace akgeo
