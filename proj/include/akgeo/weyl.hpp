#pragma once

// Pointwise split of the Weyl operator into its action on self-dual and
// anti-self-dual 2-forms, and Petrov classification by eigenvalue
// degeneracy. In Riemannian signature each half is a real symmetric
// trace-free 3x3 operator; the classifier handles general complex matrices so
// synthetic II/III/N inputs classify as expected.

#include "akgeo/curvature.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <string>

namespace akgeo {

enum class PetrovType { I, II, D, III, N, O };

inline std::string to_string(PetrovType t) {
  switch (t) {
    case PetrovType::I: return "I";
    case PetrovType::II: return "II";
    case PetrovType::D: return "D";
    case PetrovType::III: return "III";
    case PetrovType::N: return "N";
    case PetrovType::O: return "O";
  }
  return "?";
}

struct WeylHalf {
  Side side = Side::Plus;
  Eigen::Matrix3cd matrix;

  double norm() const { return matrix.norm(); }
  double max_abs() const { return matrix.cwiseAbs().maxCoeff(); }
  std::array<ComplexValue, 3> eigenvalues() const {
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(matrix, /*computeEigenvectors=*/false);
    std::array<ComplexValue, 3> ev{es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};
    std::sort(ev.begin(), ev.end(),
              [](ComplexValue a, ComplexValue b) { return std::abs(a) < std::abs(b); });
    return ev;
  }
};

namespace detail {

// (theta^i ^ theta^j)_{ab} from rows of the orthonormal coframe matrix.
inline Eigen::Matrix4d wedge_rows(const Eigen::Matrix4d& theta, int i, int j) {
  Eigen::Matrix4d w;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) w(a, b) = theta(i, a) * theta(j, b) - theta(i, b) * theta(j, a);
  return w;
}

}  // namespace detail

// The two 3x3 Weyl blocks at p, in the unit-norm bases
//   sigma^1± = (th1^th2 ± th3^th4)/sqrt2,
//   sigma^2± = (th1^th3 ± th4^th2)/sqrt2,
//   sigma^3± = (th1^th4 ± th2^th3)/sqrt2
// of an oriented orthonormal coframe th at p.
inline std::pair<WeylHalf, WeylHalf> weyl_halves(const CurvatureBundle& cb, const Point& p) {
  const MetricField& g = cb.metric();
  PointFrame f = orthonormal_frame_at(g, p);
  Evaluator ev(p);

  double weyl_num[4][4][4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = c; d < 4; ++d) {
          double v = c == d ? 0.0 : ev(cb.weyl(a + 1, b + 1, c + 1, d + 1)).real();
          weyl_num[a][b][c][d] = v;
          weyl_num[a][b][d][c] = -v;
        }

  Eigen::Matrix4d ginv_num;
  {
    const ExprMatrix& ginv = g.inverse_components();
    ginv_num = evaluate_real_matrix(ginv, ev);
  }

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::array<Eigen::Matrix4d, 3> sig_plus, sig_minus;
  Eigen::Matrix4d w12 = detail::wedge_rows(f.theta, 0, 1);
  Eigen::Matrix4d w34 = detail::wedge_rows(f.theta, 2, 3);
  Eigen::Matrix4d w13 = detail::wedge_rows(f.theta, 0, 2);
  Eigen::Matrix4d w42 = detail::wedge_rows(f.theta, 3, 1);
  Eigen::Matrix4d w14 = detail::wedge_rows(f.theta, 0, 3);
  Eigen::Matrix4d w23 = detail::wedge_rows(f.theta, 1, 2);
  sig_plus[0] = inv_sqrt2 * (w12 + w34);
  sig_minus[0] = inv_sqrt2 * (w12 - w34);
  sig_plus[1] = inv_sqrt2 * (w13 + w42);
  sig_minus[1] = inv_sqrt2 * (w13 - w42);
  sig_plus[2] = inv_sqrt2 * (w14 + w23);
  sig_minus[2] = inv_sqrt2 * (w14 - w23);

  auto raise = [&](const Eigen::Matrix4d& w) {
    return Eigen::Matrix4d(ginv_num * w * ginv_num.transpose());
  };
  auto block = [&](const std::array<Eigen::Matrix4d, 3>& sig) {
    Eigen::Matrix3cd m;
    std::array<Eigen::Matrix4d, 3> up;
    for (int i = 0; i < 3; ++i) up[i] = raise(sig[i]);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
              for (int d = 0; d < 4; ++d) acc += up[i](a, b) * weyl_num[a][b][c][d] * up[j](c, d);
        m(i, j) = 0.25 * acc;
      }
    return m;
  };

  WeylHalf plus{Side::Plus, block(sig_plus)};
  WeylHalf minus{Side::Minus, block(sig_minus)};
  return {plus, minus};
}

// Eigenvalue-degeneracy classifier. O if the operator vanishes; otherwise the
// trace-free eigenvalues decide: three distinct -> I; a repeated nonzero
// eigenvalue -> D when diagonalizable, II when not; all eigenvalues zero with
// rank 2 -> III, rank 1 -> N.
inline PetrovType petrov_classify(const WeylHalf& w, double tol_zero = -1.0,
                                  double tol_degenerate = 1e-6) {
  double scale = w.norm();
  if (tol_zero < 0.0) tol_zero = 1e-6 * (1.0 + scale);
  if (scale <= tol_zero) return PetrovType::O;

  auto ev = w.eigenvalues();
  double max_ev = 0.0;
  for (const auto& l : ev) max_ev = std::max(max_ev, std::abs(l));
  double gap_tol = tol_degenerate * std::max(1.0, max_ev);

  auto rank_at = [&](ComplexValue lambda) {
    Eigen::Matrix3cd shifted = w.matrix - lambda * Eigen::Matrix3cd::Identity();
    Eigen::JacobiSVD<Eigen::Matrix3cd> svd(shifted);
    double sv_tol = tol_degenerate * std::max(1.0, scale);
    int rank = 0;
    for (int i = 0; i < 3; ++i)
      if (svd.singularValues()(i) > sv_tol) ++rank;
    return rank;
  };

  bool all_zero = max_ev <= gap_tol;
  if (all_zero) {
    int rank = rank_at(0.0);
    if (rank == 2) return PetrovType::III;
    if (rank == 1) return PetrovType::N;
    if (rank == 0) return PetrovType::O;
    throw ClassificationError("nilpotent eigenvalues but full numerical rank");
  }

  bool eq01 = std::abs(ev[0] - ev[1]) <= gap_tol;
  bool eq12 = std::abs(ev[1] - ev[2]) <= gap_tol;
  bool eq02 = std::abs(ev[0] - ev[2]) <= gap_tol;
  int pairs = (eq01 ? 1 : 0) + (eq12 ? 1 : 0) + (eq02 ? 1 : 0);
  if (pairs == 0) return PetrovType::I;
  if (pairs == 3) throw ClassificationError("three equal nonzero eigenvalues contradict trace 0");

  ComplexValue repeated = eq01 ? ev[0] : (eq12 ? ev[1] : ev[0]);
  if (eq02) repeated = ev[0];
  // Diagonalizable iff the repeated eigenvalue has a 2-dimensional kernel.
  int rank = rank_at(repeated);
  if (rank <= 1) return PetrovType::D;
  return PetrovType::II;
}

}  // namespace akgeo
