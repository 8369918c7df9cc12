#pragma once

// Differential forms on the 4-dimensional coordinate patch. Components are
// stored over strictly increasing multi-indices, so antisymmetry is exact by
// construction. Coefficients may be complex expressions (null coframes wedge
// into complex forms); real forms are the conj-invariant special case.

#include "akgeo/expr.hpp"

#include <array>
#include <vector>

namespace akgeo {

namespace detail {

inline const std::vector<std::vector<int>>& basis_indices(int degree) {
  static const std::array<std::vector<std::vector<int>>, 5> tables = {{
      {{}},
      {{1}, {2}, {3}, {4}},
      {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}},
      {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}},
      {{1, 2, 3, 4}},
  }};
  return tables[degree];
}

// Position of a strictly increasing multi-index in the basis table.
inline int position_of(int degree, const std::vector<int>& idx) {
  const auto& table = basis_indices(degree);
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] == idx) return static_cast<int>(i);
  return -1;
}

// Sorts a multi-index, returning the permutation sign; 0 on repeats.
inline int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

}  // namespace detail

class KForm {
 public:
  explicit KForm(int degree)
      : degree_(degree), comps_(detail::basis_indices(degree).size()) {
    if (degree < 0 || degree > 4) throw Error("form degree must be in 0..4");
  }

  static KForm scalar(Expression e) {
    KForm w(0);
    w.comps_[0] = std::move(e);
    return w;
  }

  static KForm one_form(std::array<Expression, 4> comps) {
    KForm w(1);
    for (int a = 0; a < 4; ++a) w.comps_[a] = std::move(comps[a]);
    return w;
  }

  // dx^a as a 1-form.
  static KForm dx(int axis) {
    KForm w(1);
    w.comps_[axis - 1] = make_integer(1);
    return w;
  }

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(comps_.size()); }

  const Expression& operator[](int i) const { return comps_[i]; }
  Expression& operator[](int i) { return comps_[i]; }

  // Component for an arbitrary index order (antisymmetric continuation).
  Expression component(std::vector<int> idx) const {
    int sign = detail::sort_sign(idx);
    if (sign == 0) return Expression();
    int pos = detail::position_of(degree_, idx);
    Expression c = comps_[pos];
    return sign > 0 ? c : -c;
  }

  friend KForm operator+(const KForm& a, const KForm& b) {
    if (a.degree_ != b.degree_) throw Error("adding forms of different degree");
    KForm out(a.degree_);
    for (std::size_t i = 0; i < out.comps_.size(); ++i) out.comps_[i] = a.comps_[i] + b.comps_[i];
    return out;
  }
  friend KForm operator-(const KForm& a, const KForm& b) {
    if (a.degree_ != b.degree_) throw Error("subtracting forms of different degree");
    KForm out(a.degree_);
    for (std::size_t i = 0; i < out.comps_.size(); ++i) out.comps_[i] = a.comps_[i] - b.comps_[i];
    return out;
  }
  friend KForm operator*(const Expression& s, const KForm& w) {
    KForm out(w.degree_);
    for (std::size_t i = 0; i < out.comps_.size(); ++i) out.comps_[i] = s * w.comps_[i];
    return out;
  }
  friend KForm operator-(const KForm& w) { return make_integer(-1) * w; }

 private:
  int degree_;
  std::vector<Expression> comps_;
};

inline KForm wedge(const KForm& a, const KForm& b) {
  int degree = a.degree() + b.degree();
  if (degree > 4) throw Error("wedge product exceeds top degree");
  KForm out(degree);
  const auto& ia = detail::basis_indices(a.degree());
  const auto& ib = detail::basis_indices(b.degree());
  for (int p = 0; p < a.size(); ++p) {
    if (a[p].is_zero()) continue;
    for (int q = 0; q < b.size(); ++q) {
      if (b[q].is_zero()) continue;
      std::vector<int> merged = ia[p];
      merged.insert(merged.end(), ib[q].begin(), ib[q].end());
      int sign = detail::sort_sign(merged);
      if (sign == 0) continue;
      int pos = detail::position_of(degree, merged);
      Expression term = a[p] * b[q];
      out[pos] = out[pos] + (sign > 0 ? term : -term);
    }
  }
  return out;
}

inline KForm exterior_derivative(const KForm& w, DiffContext* ctx = nullptr) {
  if (w.degree() >= 4) throw Error("exterior derivative of a 4-form");
  DiffContext local;
  DiffContext& c = ctx ? *ctx : local;
  KForm out(w.degree() + 1);
  const auto& result_idx = detail::basis_indices(w.degree() + 1);
  for (std::size_t j = 0; j < result_idx.size(); ++j) {
    const std::vector<int>& J = result_idx[j];
    std::vector<Expression> terms;
    for (std::size_t t = 0; t < J.size(); ++t) {
      std::vector<int> rest;
      for (std::size_t s = 0; s < J.size(); ++s)
        if (s != t) rest.push_back(J[s]);
      int pos = detail::position_of(w.degree(), rest);
      Expression d = c.d_coord(w[pos], J[t]);
      if (d.is_zero()) continue;
      terms.push_back(t % 2 == 0 ? d : -d);
    }
    out[j] = make_sum(std::move(terms));
  }
  return out;
}

inline KForm conjugate(const KForm& w) {
  KForm out(w.degree());
  for (int i = 0; i < w.size(); ++i) out[i] = conjugate(w[i]);
  return out;
}

// True iff every component is the structural zero.
inline bool is_structurally_zero(const KForm& w) {
  for (int i = 0; i < w.size(); ++i)
    if (!w[i].is_zero()) return false;
  return true;
}

// dz1, dz2 and conjugates as complex 1-forms.
inline KForm dz(int k) {
  Expression i = imaginary_unit();
  return KForm::one_form(k == 1
                             ? std::array<Expression, 4>{make_integer(1), i, Expression(), Expression()}
                             : std::array<Expression, 4>{Expression(), Expression(), make_integer(1), i});
}
inline KForm dzbar(int k) { return conjugate(dz(k)); }

}  // namespace akgeo
