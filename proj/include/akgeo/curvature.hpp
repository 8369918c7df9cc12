#pragma once

// Curvature of a Levi-Civita connection with the conventions
//   R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
//               + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}
//   R_bd = R^a_{bad},  R = g^{bd} R_bd
//   C_abcd = R_abcd - (g_ac R_bd - g_ad R_bc + g_bd R_ac - g_bc R_ad)/2
//            + R (g_ac g_bd - g_ad g_bc)/6
// (Euclidean metric gives zero curvature; 4D Riemannian Weyl conventions.)
//
// All components are built symbolically once; pointwise work is evaluation
// through a shared memo, so the cost per point is one pass over the shared
// expression graph.

#include "akgeo/connection.hpp"

#include <span>

namespace akgeo {

class CurvatureBundle {
 public:
  CurvatureBundle() = default;

  // R^a_{bcd}
  const Expression& riemann(int a, int b, int c, int d) const {
    return riemann_[a - 1][b - 1][c - 1][d - 1];
  }
  // R_abcd (index lowered with g)
  const Expression& riemann_lower(int a, int b, int c, int d) const {
    return riemann_lower_[a - 1][b - 1][c - 1][d - 1];
  }
  const Expression& ricci(int b, int d) const { return ricci_[b - 1][d - 1]; }
  const Expression& scalar() const { return scalar_; }
  const Expression& weyl(int a, int b, int c, int d) const {
    return weyl_[a - 1][b - 1][c - 1][d - 1];
  }
  const MetricField& metric() const { return g_; }
  const Connection& connection() const { return conn_; }

  friend CurvatureBundle curvature_bundle(const MetricField&, DiffContext*);

 private:
  using Rank4 = std::array<std::array<std::array<std::array<Expression, 4>, 4>, 4>, 4>;
  MetricField g_;
  Connection conn_;
  Rank4 riemann_;
  Rank4 riemann_lower_;
  Rank4 weyl_;
  ExprMatrix ricci_;
  Expression scalar_;
};

inline CurvatureBundle curvature_bundle(const MetricField& g, DiffContext* ctx = nullptr) {
  DiffContext local;
  DiffContext& dc = ctx ? *ctx : local;
  CurvatureBundle out;
  out.g_ = g;
  out.conn_ = levi_civita(g, &dc);
  const Connection& conn = out.conn_;
  const ExprMatrix& gm = g.components();
  const ExprMatrix& ginv = g.inverse_components();

  std::array<std::array<std::array<std::array<Expression, 4>, 4>, 4>, 4> dgamma;
  for (int c = 1; c <= 4; ++c)
    for (int a = 1; a <= 4; ++a)
      for (int d = 1; d <= 4; ++d)
        for (int b = d; b <= 4; ++b) {
          Expression e = dc.d_coord(conn.gamma(a, d, b), c);
          dgamma[c - 1][a - 1][d - 1][b - 1] = e;
          dgamma[c - 1][a - 1][b - 1][d - 1] = e;
        }

  // R^a_{bcd}, antisymmetric in (c,d).
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c)
        for (int d = c; d <= 4; ++d) {
          Expression e;
          if (c != d) {
            std::vector<Expression> terms;
            terms.push_back(dgamma[c - 1][a - 1][d - 1][b - 1]);
            terms.push_back(-dgamma[d - 1][a - 1][c - 1][b - 1]);
            for (int k = 1; k <= 4; ++k) {
              terms.push_back(conn.gamma(a, c, k) * conn.gamma(k, d, b));
              terms.push_back(-(conn.gamma(a, d, k) * conn.gamma(k, c, b)));
            }
            e = make_sum(std::move(terms));
          }
          out.riemann_[a - 1][b - 1][c - 1][d - 1] = e;
          out.riemann_[a - 1][b - 1][d - 1][c - 1] = -e;
        }

  for (int b = 1; b <= 4; ++b)
    for (int d = b; d <= 4; ++d) {
      std::vector<Expression> terms;
      for (int a = 1; a <= 4; ++a) terms.push_back(out.riemann(a, b, a, d));
      Expression e = make_sum(std::move(terms));
      out.ricci_[b - 1][d - 1] = e;
      out.ricci_[d - 1][b - 1] = e;
    }

  {
    std::vector<Expression> terms;
    for (int b = 0; b < 4; ++b)
      for (int d = 0; d < 4; ++d) {
        if (ginv[b][d].is_zero() || out.ricci_[b][d].is_zero()) continue;
        terms.push_back(ginv[b][d] * out.ricci_[b][d]);
      }
    out.scalar_ = make_sum(std::move(terms));
  }

  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c)
        for (int d = c; d <= 4; ++d) {
          std::vector<Expression> terms;
          for (int e = 1; e <= 4; ++e) {
            if (gm[a - 1][e - 1].is_zero()) continue;
            terms.push_back(gm[a - 1][e - 1] * out.riemann(e, b, c, d));
          }
          Expression lo = make_sum(std::move(terms));
          out.riemann_lower_[a - 1][b - 1][c - 1][d - 1] = lo;
          out.riemann_lower_[a - 1][b - 1][d - 1][c - 1] = -lo;
        }

  Expression half = make_rational(Rational(1, 2));
  Expression sixth = make_rational(Rational(1, 6));
  auto G = [&](int i, int j) { return gm[i - 1][j - 1]; };
  auto Ric = [&](int i, int j) { return out.ricci_[i - 1][j - 1]; };
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int c = 1; c <= 4; ++c)
        for (int d = c; d <= 4; ++d) {
          Expression e = out.riemann_lower_[a - 1][b - 1][c - 1][d - 1] -
                         half * (G(a, c) * Ric(b, d) - G(a, d) * Ric(b, c) +
                                 G(b, d) * Ric(a, c) - G(b, c) * Ric(a, d)) +
                         sixth * out.scalar_ * (G(a, c) * G(b, d) - G(a, d) * G(b, c));
          out.weyl_[a - 1][b - 1][c - 1][d - 1] = e;
          out.weyl_[a - 1][b - 1][d - 1][c - 1] = -e;
        }

  return out;
}

// max |R^a_{[bcd]}| over points (first Bianchi identity).
inline double bianchi_residual(const CurvatureBundle& cb, std::span<const Point> points) {
  double worst = 0.0;
  for (const Point& p : points) {
    Evaluator ev(p);
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b)
        for (int c = 1; c <= 4; ++c)
          for (int d = 1; d <= 4; ++d) {
            ComplexValue s = ev(cb.riemann(a, b, c, d)) + ev(cb.riemann(a, c, d, b)) +
                             ev(cb.riemann(a, d, b, c));
            worst = std::max(worst, std::abs(s));
          }
  }
  return worst;
}

// max |g^{ac} C_abcd| over points (Weyl tracelessness).
inline double weyl_trace_residual(const CurvatureBundle& cb, std::span<const Point> points) {
  const ExprMatrix& ginv = cb.metric().inverse_components();
  double worst = 0.0;
  for (const Point& p : points) {
    Evaluator ev(p);
    for (int b = 1; b <= 4; ++b)
      for (int d = 1; d <= 4; ++d) {
        ComplexValue s = 0.0;
        for (int a = 1; a <= 4; ++a)
          for (int c = 1; c <= 4; ++c)
            s += ev(ginv[a - 1][c - 1]) * ev(cb.weyl(a, b, c, d));
        worst = std::max(worst, std::abs(s));
      }
  }
  return worst;
}

// Ricci components in a pointwise orthonormal frame; the usual normalized
// residual for Ricci-flatness checks.
inline double ricci_frame_max_at(const CurvatureBundle& cb, const Point& p) {
  PointFrame f = orthonormal_frame_at(cb.metric(), p);
  Evaluator ev(p);
  Eigen::Matrix4d ric;
  for (int b = 0; b < 4; ++b)
    for (int d = 0; d < 4; ++d) ric(b, d) = ev(cb.ricci(b + 1, d + 1)).real();
  Eigen::Matrix4d framed = f.frame_inv.transpose() * ric * f.frame_inv;
  return framed.cwiseAbs().maxCoeff();
}

}  // namespace akgeo
