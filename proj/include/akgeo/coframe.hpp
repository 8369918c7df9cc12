#pragma once

// Null coframes (M, Mbar, N, Nbar): four complex 1-forms with
// M ^ Mbar ^ N ^ Nbar != 0, the basic input for the metric g = 2(M Mbar +
// N Nbar) and for the xi-family of almost hermitian structures.

#include "akgeo/eval.hpp"
#include "akgeo/forms.hpp"
#include "akgeo/linalg.hpp"

#include <span>
#include <utility>
#include <vector>

namespace akgeo {

class CoframeField {
 public:
  CoframeField(ExprVector m, ExprVector n) : m_(std::move(m)), n_(std::move(n)) {
    for (int a = 0; a < 4; ++a) {
      mbar_[a] = conjugate(m_[a]);
      nbar_[a] = conjugate(n_[a]);
    }
  }

  static CoframeField from_forms(const KForm& m, const KForm& n) {
    if (m.degree() != 1 || n.degree() != 1) throw Error("coframe legs must be 1-forms");
    return CoframeField({m[0], m[1], m[2], m[3]}, {n[0], n[1], n[2], n[3]});
  }

  const ExprVector& m() const { return m_; }
  const ExprVector& mbar() const { return mbar_; }
  const ExprVector& n() const { return n_; }
  const ExprVector& nbar() const { return nbar_; }

  KForm m_form() const { return KForm::one_form(m_); }
  KForm mbar_form() const { return KForm::one_form(mbar_); }
  KForm n_form() const { return KForm::one_form(n_); }
  KForm nbar_form() const { return KForm::one_form(nbar_); }

  // Rows M, Mbar, N, Nbar against columns dx^1..dx^4.
  ExprMatrix component_matrix() const {
    ExprMatrix theta;
    for (int a = 0; a < 4; ++a) {
      theta[0][a] = m_[a];
      theta[1][a] = mbar_[a];
      theta[2][a] = n_[a];
      theta[3][a] = nbar_[a];
    }
    return theta;
  }

  // Coefficient of dx1^dx2^dx3^dx4 in M^Mbar^N^Nbar; also det of the
  // component matrix.
  Expression volume_coefficient() const {
    KForm vol = wedge(wedge(m_form(), mbar_form()), wedge(n_form(), nbar_form()));
    return vol[0];
  }

  // Dual frame (m, mbar, n, nbar): columns of the inverse component matrix.
  struct DualFrame {
    ExprVector m, mbar, n, nbar;
  };
  DualFrame dual_frame() const {
    ExprMatrix inv = inverse(component_matrix());
    DualFrame f;
    for (int a = 0; a < 4; ++a) {
      f.m[a] = inv[a][0];
      f.mbar[a] = inv[a][1];
      f.n[a] = inv[a][2];
      f.nbar[a] = inv[a][3];
    }
    return f;
  }

  // Throws on |det| below tol at any probe point. Returns the orientation of
  // -M^Mbar^N^Nbar relative to dx1^..^dx4 (positive for the paper's frames).
  int check_nondegenerate(std::span<const Point> probes, double tol = 1e-10) const {
    Expression volc = volume_coefficient();
    int orientation = 0;
    for (const Point& p : probes) {
      ComplexValue v = evaluate(volc, p);
      if (std::abs(v) <= tol)
        throw GeometryError("degenerate coframe: M^Mbar^N^Nbar vanishes at a probe point");
      if (std::abs(v.imag()) > 1e-9 * std::abs(v))
        throw GeometryError("coframe volume form is not real at a probe point");
      int s = v.real() < 0 ? +1 : -1;  // theta-volume = -(M^Mbar^N^Nbar)
      if (orientation == 0) orientation = s;
      if (orientation != s)
        throw GeometryError("coframe orientation flips across probe points");
    }
    return orientation == 0 ? +1 : orientation;
  }

 private:
  ExprVector m_, mbar_, n_, nbar_;
};

}  // namespace akgeo
