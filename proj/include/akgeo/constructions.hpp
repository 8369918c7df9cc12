#pragma once

// The concrete geometries: (f,h) null coframes, the almost-Kahler family they
// carry, the Przanowski potential ansatz with its PDE and admissibility
// constraints, the explicit Ricci-flat type-D metric, its Gibbons-Hawking and
// global charts, the Boyer-Finley-Plebanski residual, and the opposite-
// orientation Kahler structure.

#include "akgeo/curvature.hpp"
#include "akgeo/hermitian.hpp"
#include "akgeo/metric.hpp"
#include "akgeo/sampling.hpp"

#include <array>
#include <span>
#include <string>
#include <utility>

namespace akgeo {

namespace detail {

// Symmetric product of two complex 1-forms: (A B)_ab = (A_a B_b + B_a A_b)/2.
inline ExprMatrix symmetric_product(const ExprVector& a, const ExprVector& b) {
  Expression half = make_rational(Rational(1, 2));
  ExprMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      Expression e = half * (a[i] * b[j] + b[i] * a[j]);
      out[i][j] = e;
      out[j][i] = e;
    }
  return out;
}

inline ExprMatrix matrix_sum(const ExprMatrix& a, const ExprMatrix& b) {
  ExprMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = a[i][j] + b[i][j];
  return out;
}

inline ExprMatrix matrix_scale(const Expression& s, const ExprMatrix& m) {
  ExprMatrix out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = s * m[i][j];
  return out;
}

// dz1, dz2, dz1b, dz2b as component vectors.
inline ExprVector dz1_comps() {
  return {make_integer(1), imaginary_unit(), Expression(), Expression()};
}
inline ExprVector dz2_comps() {
  return {Expression(), Expression(), make_integer(1), imaginary_unit()};
}
inline ExprVector conj_comps(const ExprVector& v) {
  return {conjugate(v[0]), conjugate(v[1]), conjugate(v[2]), conjugate(v[3])};
}

// Wirtinger frame vectors d/dz1, d/dz2 and conjugates as component vectors.
inline ExprVector del1() {
  return {make_rational(Rational(1, 2)), make_constant({Rational(0), Rational(-1, 2)}),
          Expression(), Expression()};
}
inline ExprVector del2() {
  return {Expression(), Expression(), make_rational(Rational(1, 2)),
          make_constant({Rational(0), Rational(-1, 2)})};
}
inline ExprVector vec_conj(const ExprVector& v) { return conj_comps(v); }
inline ExprVector vec_add(const ExprVector& a, const ExprVector& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline ExprVector vec_scale(const Expression& s, const ExprVector& v) {
  return {s * v[0], s * v[1], s * v[2], s * v[3]};
}

}  // namespace detail

// u = v - 2 z2 z2b = 2 x1 - 2(x3^2 + x4^2), the U' defining function.
inline Expression uprime_function() {
  Expression x1 = make_coordinate(1), x3 = make_coordinate(3), x4 = make_coordinate(4);
  return 2 * x1 - 2 * make_power(x3, 2) - 2 * make_power(x4, 2);
}

// ---------------------------------------------------------------------------
// (f,h) coframes: M = f(dz1 + h dz2), N = (1/f) dz2 with f real nonvanishing.

inline CoframeField coframe_from_fh(const Expression& f, const Expression& h,
                                    std::span<const Point> probes = {}) {
  if (f.is_constant() && !f.constant_value().is_real())
    throw GeometryError("coframe_from_fh: f must be real");
  if (!structurally_equal(conjugate(f), f)) {
    if (probes.empty())
      throw GeometryError("coframe_from_fh: f is not structurally real and no probe points given");
    for (const Point& p : probes) {
      ComplexValue fv = evaluate(f, p);
      if (std::abs(fv.imag()) > 1e-10 * (1.0 + std::abs(fv.real())))
        throw GeometryError("coframe_from_fh: f is not real at a probe point");
    }
  }
  for (const Point& p : probes) {
    if (std::abs(evaluate(f, p)) < 1e-12)
      throw GeometryError("coframe_from_fh: f vanishes at a probe point");
  }
  Expression i = imaginary_unit();
  ExprVector m{f, f * i, f * h, f * h * i};
  Expression inv_f = 1 / f;
  ExprVector n{Expression(), Expression(), inv_f, inv_f * i};
  return CoframeField(std::move(m), std::move(n));
}

// ---------------------------------------------------------------------------
// Lemma-2-style almost-Kahler structure for a given (f, h, phi).

struct AlmostKahlerTriple {
  MetricField g;
  AlmostComplexStructure j;
  KForm omega{2};
  CoframeField coframe{detail::dz1_comps(), detail::dz2_comps()};
};

// omega = i(e^{i phi} dz2 ^ dz1 - e^{-i phi} dz2b ^ dz1b); constant
// coefficients, hence closed identically.
inline KForm circle_fundamental_form(double phi) {
  Expression eip = from_complex(std::polar(1.0, phi));
  Expression eim = from_complex(std::polar(1.0, -phi));
  KForm w = wedge(dz(2), dz(1));
  KForm wbar = wedge(dzbar(2), dzbar(1));
  return imaginary_unit() * (eip * w - eim * wbar);
}

inline AlmostKahlerTriple lemma2_structure(const Expression& f, const Expression& h, double phi,
                                           std::span<const Point> probes = {}) {
  AlmostKahlerTriple out;
  out.coframe = coframe_from_fh(f, h, probes);

  // Metric: 2 f^2 (dz1 + h dz2)(dz1b + hb dz2b) + (2/f^2) dz2 dz2b.
  Expression f2 = make_power(f, 2);
  ExprVector A = detail::vec_add(detail::dz1_comps(), detail::vec_scale(h, detail::dz2_comps()));
  ExprVector Abar = detail::conj_comps(A);
  ExprMatrix first = detail::matrix_scale(2 * f2, detail::symmetric_product(A, Abar));
  ExprMatrix second = detail::matrix_scale(
      make_quotient(make_integer(2), f2),
      detail::symmetric_product(detail::dz2_comps(), detail::conj_comps(detail::dz2_comps())));
  out.g = MetricField(detail::matrix_sum(first, second), +1);

  // J = 2 Re{ i e^{i phi} [ f^2 A (x) (d2b - hb d1b) - (1/f^2) dz2 (x) d1b ] }.
  Expression ieip = imaginary_unit() * from_complex(std::polar(1.0, phi));
  ExprVector d1b = detail::vec_conj(detail::del1());
  ExprVector d2b = detail::vec_conj(detail::del2());
  ExprVector vec = detail::vec_add(d2b, detail::vec_scale(-conjugate(h), d1b));
  ExprVector dz2c = detail::dz2_comps();
  out.j.side = Side::Plus;
  out.j.xi = XiParameter::unit_circle(phi);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Expression t = ieip * (f2 * A[b] * vec[a] - make_quotient(dz2c[b], f2) * d1b[a]);
      out.j.j[a][b] = t + conjugate(t);
    }

  out.omega = circle_fundamental_form(phi);
  return out;
}

// ---------------------------------------------------------------------------
// Przanowski ansatz: one real potential K(v, z2, z2b), v = z1 + z1b = 2 x1.

struct PrzanowskiData {
  Expression potential;  // K
  int epsilon = -1;      // +1 or -1
  DomainSpec domain = UPrimeDomain{};
};

namespace detail {

struct PrzanowskiDerivatives {
  Expression K, Kv, Kvv, Kv2, Kv2b, K22b;
};

// v-derivatives via d/dv = d/dx1 / 2; z2 derivatives are Wirtinger.
inline PrzanowskiDerivatives przanowski_derivatives(const Expression& K) {
  DiffContext ctx;
  PrzanowskiDerivatives d;
  Expression half = make_rational(Rational(1, 2));
  d.K = K;
  d.Kv = half * ctx.d_coord(K, 1);
  d.Kvv = half * ctx.d_coord(d.Kv, 1);
  d.Kv2 = wirtinger(d.Kv, 2, false, &ctx);
  d.Kv2b = wirtinger(d.Kv, 2, true, &ctx);
  d.K22b = wirtinger(wirtinger(K, 2, false, &ctx), 2, true, &ctx);
  return d;
}

inline void check_no_im_z1_dependence(const Expression& K, const DomainSpec& domain,
                                      const char* who) {
  Expression dK = differentiate(K, 2);
  if (dK.is_zero()) return;
  auto z = probable_zero(dK, domain, 20, 42, 1e-10);
  if (!z.is_zero)
    throw GeometryError(std::string(who) + ": K depends on Im z1 (residual " +
                        std::to_string(z.max_residual) + ")");
}

}  // namespace detail

// Left side of the Przanowski equation:
//   K_vv K_22b - K_v2b K_v2 - 2 e^{-K} (K_vv + 2 K_v^2).
inline Expression przanowski_residual(const PrzanowskiData& data) {
  detail::check_no_im_z1_dependence(data.potential, data.domain, "przanowski_residual");
  auto d = detail::przanowski_derivatives(data.potential);
  return d.Kvv * d.K22b - d.Kv2b * d.Kv2 -
         2 * make_exp(-d.K) * (d.Kvv + 2 * make_power(d.Kv, 2));
}

// Admissibility (the sign constraints): K_v > 0 and eps*K_vv > 0 at each point.
struct AdmissibilityResult {
  bool ok = true;
  std::string failure;  // which constraint failed, when not ok
  double min_kv = 0.0;
  double min_eps_kvv = 0.0;
};

inline AdmissibilityResult przanowski_admissibility(const PrzanowskiData& data,
                                                    std::span<const Point> points) {
  auto d = detail::przanowski_derivatives(data.potential);
  AdmissibilityResult r;
  r.min_kv = r.min_eps_kvv = std::numeric_limits<double>::infinity();
  for (const Point& p : points) {
    Evaluator ev(p);
    double kv = ev(d.Kv).real();
    double ekvv = data.epsilon * ev(d.Kvv).real();
    r.min_kv = std::min(r.min_kv, kv);
    r.min_eps_kvv = std::min(r.min_eps_kvv, ekvv);
  }
  if (r.min_kv <= 0.0) {
    r.ok = false;
    r.failure = "K_v > 0 fails";
  } else if (r.min_eps_kvv <= 0.0) {
    r.ok = false;
    r.failure = "eps*K_vv > 0 fails";
  }
  return r;
}

// g = (eps K_vv / K_v^{3/2}) (dz1 + (K_v2/K_vv) dz2)(dz1b + (K_v2b/K_vv) dz2b)
//     + 4 e^{-K} (K_v^{1/2} / (eps K_vv)) dz2 dz2b
// with juxtaposition the symmetric product.
inline MetricField przanowski_metric(const PrzanowskiData& data, int probe_count = 20,
                                     std::uint64_t seed = 42) {
  detail::check_no_im_z1_dependence(data.potential, data.domain, "przanowski_metric");
  std::vector<Point> probes = sample_domain(data.domain, probe_count, seed);
  AdmissibilityResult adm = przanowski_admissibility(data, probes);
  if (!adm.ok) throw GeometryError("przanowski_metric: admissibility violation: " + adm.failure);

  auto d = detail::przanowski_derivatives(data.potential);
  Expression eps = make_integer(data.epsilon);
  Expression coeff1 = make_quotient(eps * d.Kvv, make_power(d.Kv, Rational(3, 2)));
  ExprVector A = detail::vec_add(detail::dz1_comps(),
                                 detail::vec_scale(make_quotient(d.Kv2, d.Kvv), detail::dz2_comps()));
  ExprVector Abar = detail::conj_comps(A);
  Expression coeff2 =
      4 * make_exp(-d.K) * make_quotient(make_power(d.Kv, Rational(1, 2)), eps * d.Kvv);
  ExprMatrix first = detail::matrix_scale(coeff1, detail::symmetric_product(A, Abar));
  ExprMatrix second = detail::matrix_scale(
      coeff2,
      detail::symmetric_product(detail::dz2_comps(), detail::conj_comps(detail::dz2_comps())));
  return MetricField(detail::matrix_sum(first, second), +1);
}

// K = log(v - 2 z2 z2b) with eps = -1 on U'.
inline PrzanowskiData bialecki_potential() {
  PrzanowskiData d;
  d.potential = make_log(uprime_function());
  d.epsilon = -1;
  d.domain = UPrimeDomain{};
  return d;
}

// ---------------------------------------------------------------------------
// Theorem-1 package: the explicit Ricci-flat type-D metric and its circle of
// almost-Kahler structures.

inline Expression theorem1_f() {
  return make_power(make_rational(Rational(2)), Rational(-1, 2)) *
         make_power(uprime_function(), Rational(-1, 4));
}

inline Expression theorem1_h() {
  Expression x3 = make_coordinate(3), x4 = make_coordinate(4);
  return -2 * (x3 - imaginary_unit() * x4);  // -2 z2b
}

inline CoframeField theorem1_coframe() { return coframe_from_fh(theorem1_f(), theorem1_h()); }

// Direct transcription of the explicit metric:
//   u^{-1/2} (dz1 - 2 z2b dz2)(dz1b - 2 z2 dz2b) + 4 u^{1/2} dz2 dz2b.
inline MetricField theorem1_metric() {
  Expression u = uprime_function();
  ExprVector A = detail::vec_add(detail::dz1_comps(),
                                 detail::vec_scale(theorem1_h(), detail::dz2_comps()));
  ExprVector Abar = detail::conj_comps(A);
  ExprMatrix first =
      detail::matrix_scale(make_power(u, Rational(-1, 2)), detail::symmetric_product(A, Abar));
  ExprMatrix second = detail::matrix_scale(
      4 * make_power(u, Rational(1, 2)),
      detail::symmetric_product(detail::dz2_comps(), detail::conj_comps(detail::dz2_comps())));
  return MetricField(detail::matrix_sum(first, second), +1);
}

struct Theorem1Package {
  MetricField g;
  AlmostComplexStructure j;
  KForm omega{2};
  DomainSpec domain = UPrimeDomain{};
};

inline Theorem1Package theorem1_package(double phi) {
  Theorem1Package out;
  out.g = theorem1_metric();
  out.j = xi_structure(theorem1_coframe(), XiParameter::unit_circle(phi), Side::Plus);
  out.omega = circle_fundamental_form(phi);
  out.domain = UPrimeDomain{};
  return out;
}

// ---------------------------------------------------------------------------
// Charts.

enum class ChartId { GibbonsHawking, Global };

// Map components into the (x1..x4) coordinates, as expressions in the chart
// coordinates (x,y,z,q) resp. (t,y,z,q):
//   z2 = (y + i z)/2,  v = x^2 + (y^2+z^2)/2  (or e^{2t} + ...),  z1 = v/2 + i q.
inline std::array<Expression, 4> chart_map_expressions(ChartId id) {
  Expression c1 = make_coordinate(1), c2 = make_coordinate(2);
  Expression c3 = make_coordinate(3), c4 = make_coordinate(4);
  Expression half = make_rational(Rational(1, 2));
  Expression quarter = make_rational(Rational(1, 4));
  Expression radial = id == ChartId::GibbonsHawking ? make_power(c1, 2) : make_exp(2 * c1);
  return {
      half * radial + quarter * (make_power(c2, 2) + make_power(c3, 2)),  // x1 = v/2
      c4,                                                                 // x2 = q
      half * c2,                                                          // x3 = y/2
      half * c3,                                                          // x4 = z/2
  };
}

inline Point chart_map(ChartId id, const Point& chart_point) {
  if (id == ChartId::GibbonsHawking && chart_point.x[0] <= 0.0)
    throw GeometryError("Gibbons-Hawking chart requires x > 0");
  auto map = chart_map_expressions(id);
  Point out;
  out.params = chart_point.params;
  for (int a = 0; a < 4; ++a) out.x[a] = evaluate(map[a], chart_point).real();
  return out;
}

// g = x(dx^2 + dy^2 + dz^2) + (1/x)(z dy/2 - y dz/2 + dq)^2 in (x,y,z,q).
inline MetricField gh_form_metric() {
  Expression x = make_coordinate(1), y = make_coordinate(2), z = make_coordinate(3);
  Expression half = make_rational(Rational(1, 2));
  ExprVector A{Expression(), half * z, -(half * y), make_integer(1)};
  Expression inv_x = 1 / x;
  ExprMatrix g;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      Expression e = inv_x * A[a] * A[b];
      if (a == b && a < 3) e = e + x;
      g[a][b] = e;
      g[b][a] = e;
    }
  return MetricField(std::move(g), +1);
}

// ---------------------------------------------------------------------------
// Boyer-Finley-Plebanski residual: F_yy + F_zz + (e^F)_xx for F = F(x,y,z).

inline Expression bfp_residual(const Expression& F) {
  Expression dq = differentiate(F, 4);
  if (!dq.is_zero()) {
    BoxDomain box;
    box.range = {{{0.5, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}}};
    auto z = probable_zero(dq, box, 20, 42, 1e-10);
    if (!z.is_zero)
      throw GeometryError("bfp_residual: F depends on q (residual " +
                          std::to_string(z.max_residual) + ")");
  }
  DiffContext ctx;
  Expression fyy = ctx.d_coord(ctx.d_coord(F, 2), 2);
  Expression fzz = ctx.d_coord(ctx.d_coord(F, 3), 3);
  Expression exx = ctx.d_coord(ctx.d_coord(make_exp(F), 1), 1);
  return fyy + fzz + exx;
}

// ---------------------------------------------------------------------------
// The opposite-orientation Kahler structure of the explicit metric:
//   J = i[(dz1 - 2 z2b dz2)(x)d1 - conj + dz2b(x)(d2b + 2 z2 d1b) - conj].

inline std::pair<AlmostComplexStructure, KForm> section6_structure() {
  Expression i = imaginary_unit();
  Expression x3 = make_coordinate(3), x4 = make_coordinate(4);
  Expression z2 = x3 + i * x4;
  Expression z2b = x3 - i * x4;

  ExprVector alpha = detail::vec_add(detail::dz1_comps(),
                                     detail::vec_scale(-2 * z2b, detail::dz2_comps()));
  ExprVector alpha_bar = detail::conj_comps(alpha);
  ExprVector dz2c = detail::dz2_comps();
  ExprVector dz2bc = detail::conj_comps(dz2c);
  ExprVector d1 = detail::del1();
  ExprVector d1b = detail::vec_conj(d1);
  ExprVector d2 = detail::del2();
  ExprVector d2b = detail::vec_conj(d2);
  ExprVector v_plus = detail::vec_add(d2b, detail::vec_scale(2 * z2, d1b));
  ExprVector v_minus = detail::vec_add(d2, detail::vec_scale(2 * z2b, d1));

  AlmostComplexStructure J;
  J.side = Side::Minus;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      J.j[a][b] = i * (alpha[b] * d1[a] - alpha_bar[b] * d1b[a] + dz2bc[b] * v_plus[a] -
                       dz2c[b] * v_minus[a]);
    }
  KForm omega = fundamental_form(theorem1_metric(), J);
  return {J, omega};
}

}  // namespace akgeo
