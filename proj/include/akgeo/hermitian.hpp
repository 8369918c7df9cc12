#pragma once

// Almost hermitian structures: the xi-family J±_xi built from a null coframe,
// fundamental 2-forms, the Nijenhuis tensor, and sampled classification into
// Kahler / almost-Kahler / hermitian / generic.

#include "akgeo/coframe.hpp"
#include "akgeo/forms.hpp"
#include "akgeo/hodge.hpp"
#include "akgeo/metric.hpp"
#include "akgeo/report.hpp"
#include "akgeo/sampling.hpp"

#include <chrono>
#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace akgeo {

// xi in C union {infinity}; infinity uses the limit coframe M_inf = -Nbar,
// N_inf = Mbar (the phase of the limit cancels between coframe and frame).
class XiParameter {
 public:
  XiParameter() : value_(0.0) {}
  XiParameter(std::complex<double> v) : value_(v) {}
  static XiParameter infinity() {
    XiParameter xi;
    xi.infinite_ = true;
    return xi;
  }
  static XiParameter unit_circle(double phi) {
    return XiParameter(std::complex<double>(std::cos(phi), std::sin(phi)));
  }

  bool is_infinite() const { return infinite_; }
  std::complex<double> value() const { return value_; }

  std::string to_string() const {
    if (infinite_) return "inf";
    std::string s = std::to_string(value_.real());
    s += (value_.imag() < 0 ? "" : "+") + std::to_string(value_.imag()) + "i";
    return s;
  }

 private:
  std::complex<double> value_;
  bool infinite_ = false;
};

struct AlmostComplexStructure {
  ExprMatrix j;  // J^a_b
  Side side = Side::Plus;
  std::optional<XiParameter> xi;  // set when built from the xi-family

  const Expression& operator()(int a, int b) const { return j[a - 1][b - 1]; }
};

namespace detail {

struct RotatedCoframe {
  ExprVector M, Mbar, N, Nbar;  // 1-form components
  ExprVector m, mbar, n, nbar;  // frame vector components
};

inline RotatedCoframe rotate_coframe(const CoframeField& c, const XiParameter& xi) {
  CoframeField::DualFrame f = c.dual_frame();
  RotatedCoframe r;
  if (xi.is_infinite()) {
    for (int a = 0; a < 4; ++a) {
      r.M[a] = -c.nbar()[a];
      r.N[a] = c.mbar()[a];
      r.m[a] = -f.nbar[a];
      r.n[a] = f.mbar[a];
    }
  } else {
    std::complex<double> z = xi.value();
    Expression xi_e = from_complex(z);
    Expression xi_bar = from_complex(std::conj(z));
    // norm = sqrt(1 + xi*xibar), kept exact as a rational square root
    Expression inv_norm =
        make_power(make_rational(Rational(1) + rational_from_double(z.real()) * rational_from_double(z.real()) +
                                 rational_from_double(z.imag()) * rational_from_double(z.imag())),
                   Rational(-1, 2));
    for (int a = 0; a < 4; ++a) {
      r.M[a] = inv_norm * (c.m()[a] - xi_bar * c.nbar()[a]);
      r.N[a] = inv_norm * (c.n()[a] + xi_bar * c.mbar()[a]);
      r.m[a] = inv_norm * (f.m[a] - xi_e * f.nbar[a]);
      r.n[a] = inv_norm * (f.n[a] + xi_e * f.mbar[a]);
    }
  }
  for (int a = 0; a < 4; ++a) {
    r.Mbar[a] = conjugate(r.M[a]);
    r.Nbar[a] = conjugate(r.N[a]);
    r.mbar[a] = conjugate(r.m[a]);
    r.nbar[a] = conjugate(r.n[a]);
  }
  return r;
}

}  // namespace detail

// J+_xi = i(Mbar(x)mbar - M(x)m + Nbar(x)nbar - N(x)n);
// J-_xi flips the sign of the M-pair.
inline AlmostComplexStructure xi_structure(const CoframeField& c, const XiParameter& xi,
                                           Side side) {
  detail::RotatedCoframe r = detail::rotate_coframe(c, xi);
  Expression i = imaginary_unit();
  int s_m = side == Side::Plus ? -1 : +1;  // sign of the M(x)m term
  AlmostComplexStructure J;
  J.side = side;
  J.xi = xi;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      Expression e = i * (make_integer(-s_m) * (r.mbar[a] * r.Mbar[b]) +
                          make_integer(s_m) * (r.m[a] * r.M[b]) + r.nbar[a] * r.Nbar[b] -
                          r.n[a] * r.N[b]);
      J.j[a][b] = e;
    }
  }
  return J;
}

// omega+_xi = i(M_xi ^ Mbar_xi + N_xi ^ Nbar_xi); omega- flips the M wedge.
inline KForm xi_fundamental_form(const CoframeField& c, const XiParameter& xi, Side side) {
  detail::RotatedCoframe r = detail::rotate_coframe(c, xi);
  KForm M = KForm::one_form(r.M);
  KForm Mb = KForm::one_form(r.Mbar);
  KForm N = KForm::one_form(r.N);
  KForm Nb = KForm::one_form(r.Nbar);
  KForm w = side == Side::Plus ? wedge(M, Mb) + wedge(N, Nb) : wedge(Mb, M) + wedge(N, Nb);
  return imaginary_unit() * w;
}

// omega_ab = g_ac J^c_b, antisymmetrized into a KForm. When probe points are
// given, a symmetric-part residual above tol reports an incompatible pair.
inline KForm fundamental_form(const MetricField& g, const AlmostComplexStructure& J,
                              std::span<const Point> probes = {}, double tol = 1e-8) {
  ExprMatrix omega;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      std::vector<Expression> terms;
      for (int c = 0; c < 4; ++c) {
        if (g.components()[a][c].is_zero() || J.j[c][b].is_zero()) continue;
        terms.push_back(g.components()[a][c] * J.j[c][b]);
      }
      omega[a][b] = make_sum(std::move(terms));
    }
  if (!probes.empty()) {
    double worst = 0.0;
    for (const Point& p : probes) {
      Evaluator ev(p);
      for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) worst = std::max(worst, std::abs(ev(omega[a][b] + omega[b][a])));
    }
    if (worst > tol)
      throw GeometryError("fundamental form is not antisymmetric: (g, J) incompatible, residual " +
                          std::to_string(worst));
  }
  Expression half = make_rational(Rational(1, 2));
  KForm out(2);
  const auto& pairs = detail::basis_indices(2);
  for (int q = 0; q < 6; ++q) {
    int a = pairs[q][0] - 1, b = pairs[q][1] - 1;
    out[q] = half * (omega[a][b] - omega[b][a]);
  }
  return out;
}

// N^a_{bc} = J^d_b d_d J^a_c - J^d_c d_d J^a_b - J^a_d (d_b J^d_c - d_c J^d_b),
// antisymmetric in (b,c).
class NijenhuisField {
 public:
  const Expression& operator()(int a, int b, int c) const { return n_[a - 1][b - 1][c - 1]; }

  double max_abs_at(const Point& p) const {
    Evaluator ev(p);
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = b + 1; c < 4; ++c) worst = std::max(worst, std::abs(ev(n_[a][b][c])));
    return worst;
  }

  double max_abs(std::span<const Point> points) const {
    double worst = 0.0;
    for (const Point& p : points) worst = std::max(worst, max_abs_at(p));
    return worst;
  }

  friend NijenhuisField nijenhuis_tensor(const AlmostComplexStructure&, DiffContext*);

 private:
  std::array<std::array<std::array<Expression, 4>, 4>, 4> n_;
};

inline NijenhuisField nijenhuis_tensor(const AlmostComplexStructure& J,
                                       DiffContext* ctx = nullptr) {
  DiffContext local;
  DiffContext& dc = ctx ? *ctx : local;
  std::array<std::array<std::array<Expression, 4>, 4>, 4> dj;  // dj[d][a][b] = d_d J^a_b
  for (int d = 1; d <= 4; ++d)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) dj[d - 1][a][b] = dc.d_coord(J.j[a][b], d);

  NijenhuisField out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      out.n_[a][b][b] = Expression();
      for (int c = b + 1; c < 4; ++c) {
        std::vector<Expression> terms;
        for (int d = 0; d < 4; ++d) {
          if (!J.j[d][b].is_zero() && !dj[d][a][c].is_zero())
            terms.push_back(J.j[d][b] * dj[d][a][c]);
          if (!J.j[d][c].is_zero() && !dj[d][a][b].is_zero())
            terms.push_back(-(J.j[d][c] * dj[d][a][b]));
          if (!J.j[a][d].is_zero()) {
            Expression curl = dj[b][d][c] - dj[c][d][b];
            if (!curl.is_zero()) terms.push_back(-(J.j[a][d] * curl));
          }
        }
        Expression e = make_sum(std::move(terms));
        out.n_[a][b][c] = e;
        out.n_[a][c][b] = -e;
      }
    }
  return out;
}

// Max residuals of J^2 + id and J^T g J - g over the points.
struct CompatibilityResult {
  double j_squared = 0.0;
  double metric = 0.0;
  double max() const { return std::max(j_squared, metric); }
};

inline CompatibilityResult compatibility_residuals(const MetricField& g,
                                                   const AlmostComplexStructure& J,
                                                   std::span<const Point> points) {
  CompatibilityResult r;
  for (const Point& p : points) {
    Evaluator ev(p);
    Eigen::Matrix4cd jm = evaluate_matrix(J.j, ev);
    Eigen::Matrix4cd gm = evaluate_matrix(g.components(), ev);
    r.j_squared = std::max(r.j_squared,
                           (jm * jm + Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff());
    r.metric = std::max(r.metric, (jm.transpose() * gm * jm - gm).cwiseAbs().maxCoeff());
  }
  return r;
}

inline CheckReport compatibility_check(const MetricField& g, const AlmostComplexStructure& J,
                                       std::span<const Point> points, double tol = 1e-9,
                                       std::uint64_t seed = 0) {
  auto t0 = std::chrono::steady_clock::now();
  CompatibilityResult r = compatibility_residuals(g, J, points);
  CheckReport rep = CheckReport::make("compatibility", r.max(), tol,
                                      static_cast<int>(points.size()), seed);
  rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

enum class StructureVerdict { Kahler, AlmostKahlerNonKahler, HermitianNonKahler, Generic };

inline std::string to_string(StructureVerdict v) {
  switch (v) {
    case StructureVerdict::Kahler: return "Kahler";
    case StructureVerdict::AlmostKahlerNonKahler: return "AlmostKahlerNonKahler";
    case StructureVerdict::HermitianNonKahler: return "HermitianNonKahler";
    case StructureVerdict::Generic: return "Generic";
  }
  return "?";
}

// Sampled verdict, not a proof: dOmega and N_J residuals at the given points
// against tol decide the quadrant.
struct StructureClass {
  StructureVerdict verdict = StructureVerdict::Generic;
  double domega_max = 0.0;
  double nijenhuis_max = 0.0;
  CompatibilityResult compatibility;
};

inline StructureClass classify_structure(const MetricField& g, const AlmostComplexStructure& J,
                                         std::span<const Point> points, double tol = 1e-7) {
  StructureClass out;
  out.compatibility = compatibility_residuals(g, J, points);
  if (out.compatibility.max() > 1e-6)
    throw GeometryError("classify_structure: (g, J) fails compatibility, residual " +
                        std::to_string(out.compatibility.max()));
  KForm omega = fundamental_form(g, J);
  KForm domega = exterior_derivative(omega);
  NijenhuisField nj = nijenhuis_tensor(J);
  for (const Point& p : points) {
    Evaluator ev(p);
    for (int i = 0; i < domega.size(); ++i)
      out.domega_max = std::max(out.domega_max, std::abs(ev(domega[i])));
    out.nijenhuis_max = std::max(out.nijenhuis_max, nj.max_abs_at(p));
  }
  bool closed = out.domega_max < tol;
  bool integrable = out.nijenhuis_max < tol;
  if (closed && integrable) out.verdict = StructureVerdict::Kahler;
  else if (closed) out.verdict = StructureVerdict::AlmostKahlerNonKahler;
  else if (integrable) out.verdict = StructureVerdict::HermitianNonKahler;
  else out.verdict = StructureVerdict::Generic;
  return out;
}

// Residual map of the Nijenhuis norm over a grid of xi values; entries under
// tie_tol are integrability candidates (Lemma-style "at most four" probing).
struct XiScanEntry {
  XiParameter xi;
  double nijenhuis_max = 0.0;
  bool candidate = false;
};

inline std::vector<XiScanEntry> integrability_scan(const CoframeField& c, Side side,
                                                   std::span<const XiParameter> grid,
                                                   std::span<const Point> points,
                                                   double tie_tol = 1e-7) {
  std::vector<XiScanEntry> out;
  out.reserve(grid.size());
  for (const XiParameter& xi : grid) {
    AlmostComplexStructure J = xi_structure(c, xi, side);
    NijenhuisField nj = nijenhuis_tensor(J);
    XiScanEntry e;
    e.xi = xi;
    e.nijenhuis_max = nj.max_abs(points);
    e.candidate = e.nijenhuis_max < tie_tol;
    out.push_back(e);
  }
  return out;
}

// Stereographic grid over the xi-sphere: rings of constant |xi| = tan(theta/2)
// plus xi = 0 and xi = infinity.
inline std::vector<XiParameter> stereographic_grid(int n_rings, int n_phase) {
  std::vector<XiParameter> grid;
  grid.emplace_back(std::complex<double>(0.0, 0.0));
  const double pi = 3.14159265358979323846;
  for (int r = 1; r <= n_rings; ++r) {
    double theta = pi * r / (n_rings + 1);
    double rho = std::tan(theta / 2.0);
    for (int k = 0; k < n_phase; ++k) {
      double psi = 2.0 * pi * k / n_phase;
      grid.emplace_back(std::complex<double>(rho * std::cos(psi), rho * std::sin(psi)));
    }
  }
  grid.push_back(XiParameter::infinity());
  return grid;
}

}  // namespace akgeo
