#pragma once

// Levi-Civita connection: Gamma^a_{bc} = g^{ad}(d_b g_{dc} + d_c g_{db} -
// d_d g_{bc}) / 2, symmetric in (b,c), with nabla g = 0 checkable at points.

#include "akgeo/metric.hpp"

#include <span>

namespace akgeo {

class Connection {
 public:
  Connection() = default;
  Connection(const MetricField& g, std::array<std::array<std::array<Expression, 4>, 4>, 4> gamma)
      : g_(g), gamma_(std::move(gamma)) {}

  // Gamma^a_{bc}, 1-based indices.
  const Expression& gamma(int a, int b, int c) const { return gamma_[a - 1][b - 1][c - 1]; }
  const MetricField& metric() const { return g_; }

 private:
  MetricField g_;
  std::array<std::array<std::array<Expression, 4>, 4>, 4> gamma_;
};

inline Connection levi_civita(const MetricField& g, DiffContext* ctx = nullptr) {
  DiffContext local;
  DiffContext& dc = ctx ? *ctx : local;
  const ExprMatrix& gm = g.components();
  const ExprMatrix& ginv = g.inverse_components();

  std::array<std::array<std::array<Expression, 4>, 4>, 4> dg;  // dg[a][b][c] = d_a g_bc
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = b; c < 4; ++c) {
        Expression e = dc.d_coord(gm[b][c], a + 1);
        dg[a][b][c] = e;
        dg[a][c][b] = e;
      }

  std::array<std::array<std::array<Expression, 4>, 4>, 4> gamma;
  Expression half = make_rational(Rational(1, 2));
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = b; c < 4; ++c) {
        std::vector<Expression> terms;
        for (int d = 0; d < 4; ++d) {
          if (ginv[a][d].is_zero()) continue;
          Expression bracket = dg[b][d][c] + dg[c][d][b] - dg[d][b][c];
          if (bracket.is_zero()) continue;
          terms.push_back(half * ginv[a][d] * bracket);
        }
        Expression e = make_sum(std::move(terms));
        gamma[a][b][c] = e;
        gamma[a][c][b] = e;
      }
    }
  }
  return Connection(g, std::move(gamma));
}

// max |nabla_a g_bc| over the probe points; ~1e-12 scale for exact input.
inline double metricity_residual(const Connection& conn, std::span<const Point> points) {
  const ExprMatrix& gm = conn.metric().components();
  DiffContext dc;
  std::array<std::array<std::array<Expression, 4>, 4>, 4> nabla;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = b; c <= 4; ++c) {
        std::vector<Expression> terms{dc.d_coord(gm[b - 1][c - 1], a)};
        for (int e = 1; e <= 4; ++e) {
          terms.push_back(-(conn.gamma(e, a, b) * gm[e - 1][c - 1]));
          terms.push_back(-(conn.gamma(e, a, c) * gm[b - 1][e - 1]));
        }
        nabla[a - 1][b - 1][c - 1] = make_sum(std::move(terms));
      }
  double worst = 0.0;
  for (const Point& p : points) {
    Evaluator ev(p);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = b; c < 4; ++c) worst = std::max(worst, std::abs(ev(nabla[a][b][c])));
  }
  return worst;
}

}  // namespace akgeo
