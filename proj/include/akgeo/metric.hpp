#pragma once

// Symmetric metric fields with exact symbolic components, their inverses, and
// pointwise numeric frames. The inverse and determinant are computed once and
// shared (fourth-derivative chains in the curvature reuse them heavily).

#include "akgeo/coframe.hpp"
#include "akgeo/eval.hpp"
#include "akgeo/linalg.hpp"

#include <memory>
#include <mutex>
#include <span>

namespace akgeo {

// Which half of a split (self-dual / anti-self-dual, J+ / J-) is meant.
enum class Side { Plus, Minus };

class MetricField {
 public:
  MetricField() = default;
  explicit MetricField(ExprMatrix g, int orientation = +1)
      : g_(std::move(g)), orientation_(orientation), cache_(std::make_shared<Cache>()) {}

  const Expression& operator()(int a, int b) const { return g_[a - 1][b - 1]; }
  const ExprMatrix& components() const { return g_; }
  int orientation() const { return orientation_; }

  const ExprMatrix& inverse_components() const {
    ensure_cache();
    return cache_->inverse;
  }
  const Expression& det() const {
    ensure_cache();
    return cache_->det;
  }
  // sqrt(det g); carries the positivity assumption of a Riemannian metric.
  const Expression& sqrt_det() const {
    ensure_cache();
    return cache_->sqrt_det;
  }

  Eigen::Matrix4d evaluate_at(const Point& p) const {
    Evaluator ev(p);
    Eigen::Matrix4d m = evaluate_real_matrix(g_, ev);
    return 0.5 * (m + m.transpose());
  }

  // Leading principal minors at p; all positive iff positive-definite.
  std::array<double, 4> leading_minors_at(const Point& p) const {
    Eigen::Matrix4d m = evaluate_at(p);
    std::array<double, 4> minors{};
    for (int k = 1; k <= 4; ++k) minors[k - 1] = m.topLeftCorner(k, k).determinant();
    return minors;
  }

 private:
  struct Cache {
    std::once_flag once;
    ExprMatrix inverse;
    Expression det;
    Expression sqrt_det;
  };
  void ensure_cache() const {
    std::call_once(cache_->once, [this] {
      cache_->det = determinant(g_);
      cache_->inverse = akgeo::inverse(g_, cache_->det);
      cache_->sqrt_det = make_power(cache_->det, Rational(1, 2));
    });
  }

  ExprMatrix g_;
  int orientation_ = +1;
  std::shared_ptr<Cache> cache_;
};

// Orthonormal coframe at a point: rows of E give theta^i = E^i_a dx^a with
// g = E^T E; frame vectors are the columns of E^{-1}. The row order is chosen
// so det(E) matches the metric's orientation.
struct PointFrame {
  Eigen::Matrix4d theta;      // E
  Eigen::Matrix4d frame_inv;  // E^{-1}
};

inline PointFrame orthonormal_frame_at(const MetricField& g, const Point& p) {
  Eigen::Matrix4d m = g.evaluate_at(p);
  Eigen::LLT<Eigen::Matrix4d> llt(m);
  if (llt.info() != Eigen::Success)
    throw GeometryError("metric is not positive-definite at the requested point");
  Eigen::Matrix4d e = llt.matrixU();  // upper factor: g = e^T e, det(e) > 0
  if (g.orientation() < 0) e.row(3) = -e.row(3);
  PointFrame f;
  f.theta = e;
  f.frame_inv = e.inverse();
  return f;
}

// g = M(x)Mbar + Mbar(x)M + N(x)Nbar + Nbar(x)N, which is 2(M Mbar + N Nbar)
// in the symmetric-product shorthand. Real and symmetric by construction.
inline MetricField metric_from_coframe(const CoframeField& c,
                                       std::span<const Point> probes = {}) {
  int orientation = probes.empty() ? +1 : c.check_nondegenerate(probes);
  const ExprVector& m = c.m();
  const ExprVector& mb = c.mbar();
  const ExprVector& n = c.n();
  const ExprVector& nb = c.nbar();
  ExprMatrix g;
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      Expression e = m[a] * mb[b] + mb[a] * m[b] + n[a] * nb[b] + nb[a] * n[b];
      g[a][b] = e;
      g[b][a] = e;
    }
  }
  return MetricField(std::move(g), orientation);
}

// Pullback (phi*g)_ab = d_a phi^c d_b phi^d g_cd(phi). The map's four
// components are expressions in the source coordinates.
inline MetricField pullback_metric(const std::array<Expression, 4>& map, const MetricField& g) {
  Substitution subst;
  for (int c = 0; c < 4; ++c) subst.set_coordinate(c + 1, map[c]);
  ExprMatrix g_of_phi;
  for (int c = 0; c < 4; ++c)
    for (int d = 0; d < 4; ++d) g_of_phi[c][d] = subst.apply(g.components()[c][d]);
  DiffContext ctx;
  std::array<std::array<Expression, 4>, 4> jac;  // jac[c][a] = d_a phi^c
  for (int c = 0; c < 4; ++c)
    for (int a = 0; a < 4; ++a) jac[c][a] = ctx.d_coord(map[c], a + 1);
  ExprMatrix out;
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      std::vector<Expression> terms;
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
          if (jac[c][a].is_zero() || jac[d][b].is_zero() || g_of_phi[c][d].is_zero()) continue;
          terms.push_back(jac[c][a] * jac[d][b] * g_of_phi[c][d]);
        }
      }
      Expression e = make_sum(std::move(terms));
      out[a][b] = e;
      out[b][a] = e;
    }
  }
  return MetricField(std::move(out), g.orientation());
}

}  // namespace akgeo
