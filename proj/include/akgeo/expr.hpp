#pragma once

// Immutable symbolic expressions over the four real coordinates x1..x4, with
// exact complex-rational constants and named real parameters.
//
// Construction applies light normalization only: sums and products flatten
// and sort into a canonical order, exact constants fold, and like terms with
// rational coefficients collect (so x - x cancels structurally). No canonical
// simplification beyond that; correctness of identities is established by
// seeded numeric sampling (see sampling.hpp).
//
// Conjugation distributes to the leaves at construction time, so conj(conj(e))
// is structurally e and conjugating a real tree gives the tree back.

#include "akgeo/errors.hpp"
#include "akgeo/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace akgeo {

enum class NodeKind : std::uint8_t {
  Constant,   // exact complex rational a + b*i
  Coordinate, // x1..x4
  Parameter,  // named real parameter
  Sum,
  Product,
  Quotient,
  Power,      // rational exponent; non-integer exponents assume a positive base
  Exp,
  Log,
};

class Expression;
struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind;
  ComplexRational cval;              // Constant
  std::complex<double> capprox{0.0}; // Constant, cached binary64
  int coord = 0;                     // Coordinate, 1..4
  std::string param;                 // Parameter
  Rational expo;                     // Power
  bool positive_base = false;        // Power: set for non-integer exponents
  std::vector<Expression> kids;
  std::uint64_t hash = 0;
  std::uint8_t deps = 0;             // bits 0..3: x1..x4; bit 4: any parameter
};

class Expression {
 public:
  // Default-constructed expression is the constant 0.
  Expression() : node_(zero_node()) {}
  explicit Expression(NodePtr node) : node_(std::move(node)) {}

  const ExprNode& node() const { return *node_; }
  const NodePtr& ptr() const { return node_; }
  NodeKind kind() const { return node_->kind; }
  std::uint64_t hash() const { return node_->hash; }
  std::uint8_t deps() const { return node_->deps; }

  bool is_constant() const { return node_->kind == NodeKind::Constant; }
  bool is_zero() const { return is_constant() && node_->cval.is_zero(); }
  bool is_one() const { return is_constant() && node_->cval.is_one(); }
  const ComplexRational& constant_value() const { return node_->cval; }

  bool depends_on_coordinate(int axis) const { return node_->deps & (1u << (axis - 1)); }
  bool depends_on_parameters() const { return node_->deps & (1u << 4); }

 private:
  static const NodePtr& zero_node();
  NodePtr node_;
};

namespace detail {

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  // FNV-1a over 64-bit chunks; deterministic across runs.
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

inline std::uint64_t hash_double(double d) {
  if (d == 0.0) d = 0.0;  // fold -0
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(d));
  std::memcpy(&bits, &d, sizeof(bits));
  return bits;
}

inline std::uint64_t hash_rational(const Rational& r) {
  std::uint64_t h = hash_double(to_double(r));
  h = hash_mix(h, is_integer(r) ? 1 : 2);
  return h;
}

inline std::uint64_t node_hash(const ExprNode& n) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = hash_mix(h, static_cast<std::uint64_t>(n.kind));
  switch (n.kind) {
    case NodeKind::Constant:
      h = hash_mix(h, hash_rational(n.cval.re));
      h = hash_mix(h, hash_rational(n.cval.im));
      break;
    case NodeKind::Coordinate:
      h = hash_mix(h, static_cast<std::uint64_t>(n.coord));
      break;
    case NodeKind::Parameter:
      for (char c : n.param) h = hash_mix(h, static_cast<unsigned char>(c));
      break;
    case NodeKind::Power:
      h = hash_mix(h, hash_rational(n.expo));
      break;
    default:
      break;
  }
  for (const Expression& k : n.kids) h = hash_mix(h, k.hash());
  return h;
}

inline std::uint8_t node_deps(const ExprNode& n) {
  std::uint8_t d = 0;
  if (n.kind == NodeKind::Coordinate) d |= static_cast<std::uint8_t>(1u << (n.coord - 1));
  if (n.kind == NodeKind::Parameter) d |= 1u << 4;
  for (const Expression& k : n.kids) d |= k.deps();
  return d;
}

inline NodePtr finish(ExprNode&& n) {
  n.hash = node_hash(n);
  n.deps = node_deps(n);
  return std::make_shared<const ExprNode>(std::move(n));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Structural order and equality

inline int compare(const Expression& a, const Expression& b);

inline bool structurally_equal(const Expression& a, const Expression& b) {
  if (a.ptr() == b.ptr()) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

namespace detail {

inline int cmp_rational(const Rational& a, const Rational& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

// Deep structural comparison; total order used as tiebreak for equal hashes.
inline int deep_compare(const Expression& a, const Expression& b) {
  const ExprNode& na = a.node();
  const ExprNode& nb = b.node();
  if (na.kind != nb.kind)
    return static_cast<int>(na.kind) < static_cast<int>(nb.kind) ? -1 : 1;
  switch (na.kind) {
    case NodeKind::Constant: {
      int c = cmp_rational(na.cval.re, nb.cval.re);
      if (c) return c;
      return cmp_rational(na.cval.im, nb.cval.im);
    }
    case NodeKind::Coordinate:
      return na.coord < nb.coord ? -1 : (na.coord > nb.coord ? 1 : 0);
    case NodeKind::Parameter:
      return na.param.compare(nb.param) < 0 ? -1 : (na.param == nb.param ? 0 : 1);
    case NodeKind::Power: {
      int c = cmp_rational(na.expo, nb.expo);
      if (c) return c;
      break;
    }
    default:
      break;
  }
  if (na.kids.size() != nb.kids.size()) return na.kids.size() < nb.kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < na.kids.size(); ++i) {
    int c = compare(na.kids[i], nb.kids[i]);
    if (c) return c;
  }
  return 0;
}

}  // namespace detail

inline int compare(const Expression& a, const Expression& b) {
  if (a.ptr() == b.ptr()) return 0;
  if (a.hash() != b.hash()) return a.hash() < b.hash() ? -1 : 1;
  return detail::deep_compare(a, b);
}

// ---------------------------------------------------------------------------
// Constructors

inline Expression make_constant(ComplexRational c) {
  ExprNode n;
  n.kind = NodeKind::Constant;
  n.capprox = c.approx();
  n.cval = std::move(c);
  return Expression(detail::finish(std::move(n)));
}

inline Expression make_rational(Rational r) { return make_constant(ComplexRational(std::move(r))); }
inline Expression make_integer(long v) { return make_rational(Rational(v)); }
inline Expression imaginary_unit() { return make_constant({Rational(0), Rational(1)}); }
inline Expression from_double(double d) { return make_rational(rational_from_double(d)); }
inline Expression from_complex(std::complex<double> z) {
  return make_constant(complex_rational_from(z));
}

inline const NodePtr& Expression::zero_node() {
  static const NodePtr z = [] {
    ExprNode n;
    n.kind = NodeKind::Constant;
    return detail::finish(std::move(n));
  }();
  return z;
}

inline Expression make_coordinate(int axis) {
  if (axis < 1 || axis > 4) throw Error("coordinate index out of range: " + std::to_string(axis));
  ExprNode n;
  n.kind = NodeKind::Coordinate;
  n.coord = axis;
  return Expression(detail::finish(std::move(n)));
}

inline Expression make_parameter(std::string name) {
  ExprNode n;
  n.kind = NodeKind::Parameter;
  n.param = std::move(name);
  return Expression(detail::finish(std::move(n)));
}

namespace detail {

// Assemble a Sum/Product node from already-normalized parts (no re-sorting).
inline Expression assemble(NodeKind kind, std::vector<Expression> kids) {
  ExprNode n;
  n.kind = kind;
  n.kids = std::move(kids);
  return Expression(finish(std::move(n)));
}

// Splits a normalized term into (coefficient, key). The key of a Product whose
// first kid is a Constant is the product of the remaining kids.
inline std::pair<ComplexRational, Expression> split_term(const Expression& t) {
  if (t.kind() == NodeKind::Product && t.node().kids.front().is_constant()) {
    const auto& kids = t.node().kids;
    ComplexRational coeff = kids.front().constant_value();
    if (kids.size() == 2) return {coeff, kids[1]};
    std::vector<Expression> rest(kids.begin() + 1, kids.end());
    return {coeff, assemble(NodeKind::Product, std::move(rest))};
  }
  return {ComplexRational(Rational(1)), t};
}

// Rebuilds coeff * key with the canonical constant-first layout.
inline Expression make_term(const ComplexRational& coeff, const Expression& key) {
  if (coeff.is_one()) return key;
  std::vector<Expression> kids;
  kids.push_back(make_constant(coeff));
  if (key.kind() == NodeKind::Product && !key.node().kids.front().is_constant()) {
    for (const Expression& k : key.node().kids) kids.push_back(k);
  } else {
    kids.push_back(key);
  }
  return assemble(NodeKind::Product, std::move(kids));
}

}  // namespace detail

inline Expression make_sum(std::vector<Expression> terms) {
  std::vector<Expression> flat;
  flat.reserve(terms.size());
  for (Expression& t : terms) {
    if (t.kind() == NodeKind::Sum) {
      for (const Expression& k : t.node().kids) flat.push_back(k);
    } else {
      flat.push_back(std::move(t));
    }
  }
  ComplexRational const_acc;
  // Collect like terms: key -> accumulated coefficient, deterministic order.
  std::vector<std::pair<Expression, ComplexRational>> collected;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  for (const Expression& t : flat) {
    if (t.is_constant()) {
      const_acc = const_acc + t.constant_value();
      continue;
    }
    auto [coeff, key] = detail::split_term(t);
    auto& bucket = buckets[key.hash()];
    bool merged = false;
    for (std::size_t idx : bucket) {
      if (structurally_equal(collected[idx].first, key)) {
        collected[idx].second = collected[idx].second + coeff;
        merged = true;
        break;
      }
    }
    if (!merged) {
      bucket.push_back(collected.size());
      collected.emplace_back(key, coeff);
    }
  }
  std::vector<Expression> out;
  out.reserve(collected.size() + 1);
  for (const auto& [key, coeff] : collected) {
    if (coeff.is_zero()) continue;
    out.push_back(detail::make_term(coeff, key));
  }
  std::sort(out.begin(), out.end(), [](const Expression& a, const Expression& b) {
    return compare(a, b) < 0;
  });
  if (!const_acc.is_zero())
    out.insert(out.begin(), make_constant(std::move(const_acc)));
  if (out.empty()) return Expression();
  if (out.size() == 1) return out.front();
  return detail::assemble(NodeKind::Sum, std::move(out));
}

inline Expression make_product(std::vector<Expression> factors) {
  std::vector<Expression> flat;
  flat.reserve(factors.size());
  for (Expression& f : factors) {
    if (f.kind() == NodeKind::Product) {
      for (const Expression& k : f.node().kids) flat.push_back(k);
    } else {
      flat.push_back(std::move(f));
    }
  }
  ComplexRational coeff{Rational(1)};
  std::vector<Expression> rest;
  rest.reserve(flat.size());
  for (const Expression& f : flat) {
    if (f.is_constant()) {
      coeff = coeff * f.constant_value();
    } else {
      rest.push_back(f);
    }
  }
  if (coeff.is_zero()) return Expression();
  std::sort(rest.begin(), rest.end(), [](const Expression& a, const Expression& b) {
    return compare(a, b) < 0;
  });
  if (rest.empty()) return make_constant(std::move(coeff));
  if (coeff.is_one()) {
    if (rest.size() == 1) return rest.front();
    return detail::assemble(NodeKind::Product, std::move(rest));
  }
  rest.insert(rest.begin(), make_constant(std::move(coeff)));
  return detail::assemble(NodeKind::Product, std::move(rest));
}

inline Expression make_quotient(Expression num, Expression den);

inline Expression make_power(Expression base, Rational exponent) {
  if (exponent == 0) return make_integer(1);
  if (exponent == 1) return base;
  if (base.is_one()) return base;
  if (base.is_constant() && is_integer(exponent)) {
    const ComplexRational& c = base.constant_value();
    if (!c.is_zero()) return make_constant(c.ipow(exponent.convert_to<long>()));
    if (exponent > 0) return Expression();
    // 0^(negative): keep the node, evaluation reports the division by zero.
  }
  ExprNode n;
  n.kind = NodeKind::Power;
  n.positive_base = !is_integer(exponent);
  n.expo = std::move(exponent);
  n.kids.push_back(std::move(base));
  return Expression(detail::finish(std::move(n)));
}

inline Expression make_quotient(Expression num, Expression den) {
  if (num.is_zero()) return num;
  if (den.is_one()) return num;
  if (den.is_constant()) {
    const ComplexRational& c = den.constant_value();
    if (c.is_zero()) throw EvalError(EvalError::Kind::DivisionByZero, "division by constant zero");
    return make_product({std::move(num), make_constant(c.inverse())});
  }
  if (den.kind() == NodeKind::Quotient) {
    // a / (b/c) = a*c / b
    Expression b = den.node().kids[0];
    Expression c = den.node().kids[1];
    return make_quotient(make_product({std::move(num), std::move(c)}), std::move(b));
  }
  if (num.kind() == NodeKind::Quotient) {
    // (a/b) / c = a / (b*c)
    Expression a = num.node().kids[0];
    Expression b = num.node().kids[1];
    return make_quotient(std::move(a), make_product({std::move(b), std::move(den)}));
  }
  if (structurally_equal(num, den)) return make_integer(1);
  ExprNode n;
  n.kind = NodeKind::Quotient;
  n.kids.push_back(std::move(num));
  n.kids.push_back(std::move(den));
  return Expression(detail::finish(std::move(n)));
}

inline Expression make_exp(Expression arg) {
  if (arg.is_zero()) return make_integer(1);
  ExprNode n;
  n.kind = NodeKind::Exp;
  n.kids.push_back(std::move(arg));
  return Expression(detail::finish(std::move(n)));
}

inline Expression make_log(Expression arg) {
  if (arg.is_one()) return Expression();
  ExprNode n;
  n.kind = NodeKind::Log;
  n.kids.push_back(std::move(arg));
  return Expression(detail::finish(std::move(n)));
}

// ---------------------------------------------------------------------------
// Operator sugar

inline Expression operator+(const Expression& a, const Expression& b) { return make_sum({a, b}); }
inline Expression operator-(const Expression& a) {
  return make_product({make_integer(-1), a});
}
inline Expression operator-(const Expression& a, const Expression& b) { return make_sum({a, -b}); }
inline Expression operator*(const Expression& a, const Expression& b) {
  return make_product({a, b});
}
inline Expression operator/(const Expression& a, const Expression& b) { return make_quotient(a, b); }

inline Expression pow(const Expression& base, Rational exponent) {
  return make_power(base, std::move(exponent));
}
inline Expression pow(const Expression& base, long num, long den) {
  return make_power(base, Rational(num, den));
}
inline Expression sqrt(const Expression& e) { return make_power(e, Rational(1, 2)); }
inline Expression exp(const Expression& e) { return make_exp(e); }
inline Expression log(const Expression& e) { return make_log(e); }

inline Expression operator*(long a, const Expression& b) { return make_integer(a) * b; }
inline Expression operator*(const Expression& a, long b) { return a * make_integer(b); }
inline Expression operator+(const Expression& a, long b) { return a + make_integer(b); }
inline Expression operator+(long a, const Expression& b) { return make_integer(a) + b; }
inline Expression operator-(const Expression& a, long b) { return a - make_integer(b); }
inline Expression operator-(long a, const Expression& b) { return make_integer(a) - b; }
inline Expression operator/(long a, const Expression& b) { return make_integer(a) / b; }
inline Expression operator/(const Expression& a, long b) { return a / make_integer(b); }

// ---------------------------------------------------------------------------
// Conjugation: distributes to leaves; parameters are real by declaration.

namespace detail {

inline Expression conjugate_impl(const Expression& e,
                                 std::unordered_map<const ExprNode*, Expression>& memo) {
  auto it = memo.find(e.ptr().get());
  if (it != memo.end()) return it->second;
  const ExprNode& n = e.node();
  Expression out;
  switch (n.kind) {
    case NodeKind::Constant:
      out = make_constant(n.cval.conj());
      break;
    case NodeKind::Coordinate:
    case NodeKind::Parameter:
      out = e;
      break;
    case NodeKind::Sum:
    case NodeKind::Product: {
      std::vector<Expression> kids;
      kids.reserve(n.kids.size());
      for (const Expression& k : n.kids) kids.push_back(conjugate_impl(k, memo));
      out = n.kind == NodeKind::Sum ? make_sum(std::move(kids)) : make_product(std::move(kids));
      break;
    }
    case NodeKind::Quotient:
      out = make_quotient(conjugate_impl(n.kids[0], memo), conjugate_impl(n.kids[1], memo));
      break;
    case NodeKind::Power:
      out = make_power(conjugate_impl(n.kids[0], memo), n.expo);
      break;
    case NodeKind::Exp:
      out = make_exp(conjugate_impl(n.kids[0], memo));
      break;
    case NodeKind::Log:
      out = make_log(conjugate_impl(n.kids[0], memo));
      break;
  }
  memo.emplace(e.ptr().get(), out);
  return out;
}

}  // namespace detail

inline Expression conjugate(const Expression& e) {
  std::unordered_map<const ExprNode*, Expression> memo;
  return detail::conjugate_impl(e, memo);
}

// ---------------------------------------------------------------------------
// Exact differentiation

namespace detail {

// One shared context per batch of derivatives keeps subtrees maximally shared,
// which the memoized evaluator depends on for speed.
class DiffContext {
 public:
  // var: 1..4 for coordinates, or ~0-keyed parameter name.
  Expression d_coord(const Expression& e, int axis) {
    return diff(e, axis, nullptr);
  }
  Expression d_param(const Expression& e, const std::string& name) {
    return diff(e, 0, &name);
  }

 private:
  struct Key {
    const ExprNode* node;
    int axis;
    std::string param;
    bool operator==(const Key& o) const {
      return node == o.node && axis == o.axis && param == o.param;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = reinterpret_cast<std::uintptr_t>(k.node);
      h = hash_mix(h, static_cast<std::uint64_t>(k.axis));
      for (char c : k.param) h = hash_mix(h, static_cast<unsigned char>(c));
      return static_cast<std::size_t>(h);
    }
  };

  Expression diff(const Expression& e, int axis, const std::string* param) {
    // Fast path: no dependence on the variable at all.
    if (axis > 0 && !e.depends_on_coordinate(axis)) return Expression();
    if (axis == 0 && !e.depends_on_parameters()) return Expression();
    Key key{e.ptr().get(), axis, param ? *param : std::string()};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Expression out = diff_node(e, axis, param);
    memo_.emplace(std::move(key), out);
    return out;
  }

  Expression diff_node(const Expression& e, int axis, const std::string* param) {
    const ExprNode& n = e.node();
    switch (n.kind) {
      case NodeKind::Constant:
        return Expression();
      case NodeKind::Coordinate:
        return axis == n.coord ? make_integer(1) : Expression();
      case NodeKind::Parameter:
        return (param && n.param == *param) ? make_integer(1) : Expression();
      case NodeKind::Sum: {
        std::vector<Expression> terms;
        terms.reserve(n.kids.size());
        for (const Expression& k : n.kids) terms.push_back(diff(k, axis, param));
        return make_sum(std::move(terms));
      }
      case NodeKind::Product: {
        std::vector<Expression> terms;
        terms.reserve(n.kids.size());
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
          Expression di = diff(n.kids[i], axis, param);
          if (di.is_zero()) continue;
          std::vector<Expression> fac;
          fac.reserve(n.kids.size());
          for (std::size_t j = 0; j < n.kids.size(); ++j) fac.push_back(i == j ? di : n.kids[j]);
          terms.push_back(make_product(std::move(fac)));
        }
        return make_sum(std::move(terms));
      }
      case NodeKind::Quotient: {
        const Expression& u = n.kids[0];
        const Expression& v = n.kids[1];
        Expression du = diff(u, axis, param);
        Expression dv = diff(v, axis, param);
        if (dv.is_zero()) return make_quotient(du, v);
        return make_quotient(du * v - u * dv, v * v);
      }
      case NodeKind::Power: {
        const Expression& base = n.kids[0];
        Expression db = diff(base, axis, param);
        if (db.is_zero()) return Expression();
        return make_rational(n.expo) * make_power(base, n.expo - 1) * db;
      }
      case NodeKind::Exp:
        return e * diff(n.kids[0], axis, param);
      case NodeKind::Log:
        return make_quotient(diff(n.kids[0], axis, param), n.kids[0]);
    }
    return Expression();
  }

  std::unordered_map<Key, Expression, KeyHash> memo_;
};

}  // namespace detail

using DiffContext = detail::DiffContext;

inline Expression differentiate(const Expression& e, int axis) {
  DiffContext ctx;
  return ctx.d_coord(e, axis);
}

inline Expression differentiate_parameter(const Expression& e, const std::string& name) {
  DiffContext ctx;
  return ctx.d_param(e, name);
}

// Wirtinger derivative with respect to z_k = x^{2k-1} + i x^{2k}:
//   d/dz_k   = (d/dx^{2k-1} - i d/dx^{2k}) / 2
//   d/dz_k^- = (d/dx^{2k-1} + i d/dx^{2k}) / 2
inline Expression wirtinger(const Expression& e, int k, bool barred, DiffContext* ctx = nullptr) {
  if (k != 1 && k != 2) throw Error("wirtinger index must be 1 or 2");
  DiffContext local;
  DiffContext& c = ctx ? *ctx : local;
  Expression dre = c.d_coord(e, 2 * k - 1);
  Expression dim = c.d_coord(e, 2 * k);
  Expression half = make_rational(Rational(1, 2));
  Expression ihalf = make_constant({Rational(0), barred ? Rational(1, 2) : Rational(-1, 2)});
  return half * dre + ihalf * dim;
}

// ---------------------------------------------------------------------------
// Substitution (coordinates and/or parameters); used for chart pullbacks.

class Substitution {
 public:
  void set_coordinate(int axis, Expression e) { coords_[axis - 1] = std::move(e); }
  void set_parameter(const std::string& name, Expression e) { params_[name] = std::move(e); }

  Expression apply(const Expression& e) {
    auto it = memo_.find(e.ptr().get());
    if (it != memo_.end()) return it->second;
    Expression out = apply_node(e);
    memo_.emplace(e.ptr().get(), out);
    return out;
  }

 private:
  Expression apply_node(const Expression& e) {
    const ExprNode& n = e.node();
    switch (n.kind) {
      case NodeKind::Constant:
        return e;
      case NodeKind::Coordinate:
        return coords_[n.coord - 1] ? *coords_[n.coord - 1] : e;
      case NodeKind::Parameter: {
        auto it = params_.find(n.param);
        return it != params_.end() ? it->second : e;
      }
      case NodeKind::Sum:
      case NodeKind::Product: {
        std::vector<Expression> kids;
        kids.reserve(n.kids.size());
        for (const Expression& k : n.kids) kids.push_back(apply(k));
        return n.kind == NodeKind::Sum ? make_sum(std::move(kids))
                                       : make_product(std::move(kids));
      }
      case NodeKind::Quotient:
        return make_quotient(apply(n.kids[0]), apply(n.kids[1]));
      case NodeKind::Power:
        return make_power(apply(n.kids[0]), n.expo);
      case NodeKind::Exp:
        return make_exp(apply(n.kids[0]));
      case NodeKind::Log:
        return make_log(apply(n.kids[0]));
    }
    return e;
  }

  std::array<std::optional<Expression>, 4> coords_;
  std::map<std::string, Expression> params_;
  std::unordered_map<const ExprNode*, Expression> memo_;
};

// ---------------------------------------------------------------------------
// Printing; output re-parses to an equivalent expression.

namespace detail {

// Precedence levels: sum < product < unary < power < atom.
enum { kPrecSum = 0, kPrecProduct = 1, kPrecPower = 2, kPrecAtom = 3 };

inline void print_node(const Expression& e, std::string& out, int parent_prec);

inline void print_constant(const ComplexRational& c, std::string& out, int parent_prec) {
  std::string s;
  bool needs_paren = false;
  if (c.im == 0) {
    s = rational_to_string(c.re);
    needs_paren = (c.re < 0 || !is_integer(c.re)) && parent_prec >= kPrecProduct;
  } else if (c.re == 0) {
    if (c.im == 1) {
      s = "i";
    } else if (c.im == -1) {
      s = "-i";
      needs_paren = parent_prec >= kPrecProduct;
    } else {
      s = rational_to_string(c.im) + "*i";
      needs_paren = parent_prec >= kPrecProduct;
    }
  } else {
    std::string im = c.im == 1 ? "i" : (c.im == -1 ? "-i" : rational_to_string(c.im) + "*i");
    s = rational_to_string(c.re) + (im[0] == '-' ? " - " + im.substr(1) : " + " + im);
    needs_paren = parent_prec >= kPrecProduct;
  }
  out += needs_paren ? "(" + s + ")" : s;
}

inline void print_node(const Expression& e, std::string& out, int parent_prec) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case NodeKind::Constant:
      print_constant(n.cval, out, parent_prec);
      return;
    case NodeKind::Coordinate:
      out += "x" + std::to_string(n.coord);
      return;
    case NodeKind::Parameter:
      out += n.param;
      return;
    case NodeKind::Sum: {
      bool paren = parent_prec > kPrecSum;
      if (paren) out += "(";
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += " + ";
        print_node(n.kids[i], out, kPrecSum);
      }
      if (paren) out += ")";
      return;
    }
    case NodeKind::Product: {
      bool paren = parent_prec > kPrecProduct;
      if (paren) out += "(";
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += "*";
        print_node(n.kids[i], out, kPrecProduct + (i ? 1 : 0));
      }
      if (paren) out += ")";
      return;
    }
    case NodeKind::Quotient: {
      bool paren = parent_prec > kPrecProduct;
      if (paren) out += "(";
      print_node(n.kids[0], out, kPrecProduct);
      out += "/";
      print_node(n.kids[1], out, kPrecPower);
      if (paren) out += ")";
      return;
    }
    case NodeKind::Power: {
      bool paren = parent_prec > kPrecPower;
      if (paren) out += "(";
      print_node(n.kids[0], out, kPrecPower + 1);
      out += "^";
      if (is_integer(n.expo)) {
        out += numerator(n.expo).str();
      } else {
        out += "(" + numerator(n.expo).str() + "/" + denominator(n.expo).str() + ")";
      }
      if (paren) out += ")";
      return;
    }
    case NodeKind::Exp:
      out += "exp(";
      print_node(n.kids[0], out, kPrecSum);
      out += ")";
      return;
    case NodeKind::Log:
      out += "log(";
      print_node(n.kids[0], out, kPrecSum);
      out += ")";
      return;
  }
}

}  // namespace detail

inline std::string to_string(const Expression& e) {
  std::string out;
  detail::print_node(e, out, detail::kPrecSum);
  return out;
}

}  // namespace akgeo
