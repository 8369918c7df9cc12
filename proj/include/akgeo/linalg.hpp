#pragma once

// Small symbolic matrix helpers (4x4 over Expression) plus numeric evaluation
// into Eigen types for pointwise work.

#include "akgeo/eval.hpp"
#include "akgeo/expr.hpp"

#include <Eigen/Dense>

#include <array>

namespace akgeo {

using ExprMatrix = std::array<std::array<Expression, 4>, 4>;
using ExprVector = std::array<Expression, 4>;

namespace detail {

inline Expression det3(const ExprMatrix& m, const std::array<int, 3>& rows,
                       const std::array<int, 3>& cols) {
  auto e = [&](int r, int c) { return m[rows[r]][cols[c]]; };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
         e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

inline std::array<int, 3> complement(int k) {
  std::array<int, 3> out{};
  int j = 0;
  for (int i = 0; i < 4; ++i)
    if (i != k) out[j++] = i;
  return out;
}

}  // namespace detail

inline Expression determinant(const ExprMatrix& m) {
  std::vector<Expression> terms;
  for (int c = 0; c < 4; ++c) {
    if (m[0][c].is_zero()) continue;
    Expression minor = detail::det3(m, {1, 2, 3}, detail::complement(c));
    Expression t = m[0][c] * minor;
    terms.push_back(c % 2 == 0 ? t : -t);
  }
  return make_sum(std::move(terms));
}

// inverse[i][j] = cofactor_{ji} / det (adjugate over determinant).
inline ExprMatrix inverse(const ExprMatrix& m, const Expression& det) {
  ExprMatrix out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Expression cof = detail::det3(m, detail::complement(j), detail::complement(i));
      if ((i + j) % 2 == 1) cof = -cof;
      out[i][j] = make_quotient(cof, det);
    }
  }
  return out;
}

inline ExprMatrix inverse(const ExprMatrix& m) { return inverse(m, determinant(m)); }

inline Eigen::Matrix4cd evaluate_matrix(const ExprMatrix& m, Evaluator& ev) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = ev(m[i][j]);
  return out;
}

// Evaluates a real-valued symbolic matrix, discarding rounding-level
// imaginary parts.
inline Eigen::Matrix4d evaluate_real_matrix(const ExprMatrix& m, Evaluator& ev) {
  Eigen::Matrix4d out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = ev(m[i][j]).real();
  return out;
}

}  // namespace akgeo
