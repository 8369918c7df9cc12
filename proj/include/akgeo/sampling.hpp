#pragma once

// Seeded deterministic sampling of verification domains, and the randomized
// zero test used in place of canonical simplification. Points are generated
// sequentially from the seed, so results do not depend on how callers
// parallelize evaluation afterwards.

#include "akgeo/eval.hpp"
#include "akgeo/expr.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace akgeo {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0,1); uses the raw 64-bit stream, identical on every platform.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 gen_;
};

// The paper's region U' = {v - 2 z2 z2b > 0}, sampled with a margin that keeps
// the surd factors and their derivatives tame: u in [u_lo, u_hi], |z2| <=
// z2_abs_max, Im z1 in [-im_z1_max, im_z1_max].
struct UPrimeDomain {
  double u_lo = 0.5;
  double u_hi = 4.0;
  double z2_abs_max = 1.0;
  double im_z1_max = 2.0;
};

struct BoxDomain {
  std::array<std::pair<double, double>, 4> range{
      {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};
};

using DomainSpec = std::variant<UPrimeDomain, BoxDomain>;

inline double uprime_u(const Point& p) {
  return 2.0 * p.x[0] - 2.0 * (p.x[2] * p.x[2] + p.x[3] * p.x[3]);
}

inline bool contains(const DomainSpec& d, const Point& p) {
  if (const auto* u = std::get_if<UPrimeDomain>(&d)) {
    double uu = uprime_u(p);
    return uu >= u->u_lo && uu <= u->u_hi &&
           p.x[2] * p.x[2] + p.x[3] * p.x[3] <= u->z2_abs_max * u->z2_abs_max &&
           std::abs(p.x[1]) <= u->im_z1_max;
  }
  const auto& box = std::get<BoxDomain>(d);
  for (int a = 0; a < 4; ++a) {
    double lo = std::min(box.range[a].first, box.range[a].second);
    double hi = std::max(box.range[a].first, box.range[a].second);
    if (p.x[a] < lo || p.x[a] > hi) return false;
  }
  return true;
}

namespace detail {

inline Point draw(const DomainSpec& d, Rng& rng) {
  if (const auto* u = std::get_if<UPrimeDomain>(&d)) {
    // Disk for z2 by rejection inside this draw; u and Im z1 directly.
    double x3 = 0.0, x4 = 0.0;
    do {
      x3 = rng.uniform(-u->z2_abs_max, u->z2_abs_max);
      x4 = rng.uniform(-u->z2_abs_max, u->z2_abs_max);
    } while (x3 * x3 + x4 * x4 > u->z2_abs_max * u->z2_abs_max);
    double uu = rng.uniform(u->u_lo, u->u_hi);
    double x2 = rng.uniform(-u->im_z1_max, u->im_z1_max);
    double x1 = 0.5 * uu + (x3 * x3 + x4 * x4);
    return Point::at(x1, x2, x3, x4);
  }
  const auto& box = std::get<BoxDomain>(d);
  Point p;
  for (int a = 0; a < 4; ++a) p.x[a] = rng.uniform(box.range[a].first, box.range[a].second);
  return p;
}

}  // namespace detail

// Deterministic list of n points satisfying the domain predicate. Rejection
// sampling with a retry cap of 1000*n draws total.
inline std::vector<Point> sample_domain(const DomainSpec& d, int n, std::uint64_t seed) {
  if (n < 1) throw Error("sample_domain: need n >= 1");
  Rng rng(seed);
  std::vector<Point> points;
  points.reserve(n);
  long budget = 1000L * n;
  while (static_cast<int>(points.size()) < n) {
    if (budget-- <= 0)
      throw Error("sample_domain: retry cap exceeded (domain empty or too thin)");
    Point p = detail::draw(d, rng);
    if (contains(d, p)) points.push_back(p);
  }
  return points;
}

struct ZeroTestResult {
  bool is_zero = false;
  double max_residual = 0.0;
  int samples = 0;
};

// Probabilistic zero test: true iff |e| <= tol at n seeded points of the
// domain. Points that trip a domain guard are resampled (same retry cap).
inline ZeroTestResult probable_zero(const Expression& e, const DomainSpec& d, int n,
                                    std::uint64_t seed, double tol) {
  if (n < 1) throw Error("probable_zero: need n >= 1");
  Rng rng(seed);
  ZeroTestResult r;
  long budget = 1000L * n;
  while (r.samples < n) {
    if (budget-- <= 0)
      throw Error("probable_zero: retry cap exceeded (domain guards reject every sample)");
    Point p = detail::draw(d, rng);
    if (!contains(d, p)) continue;
    double resid = 0.0;
    try {
      resid = std::abs(evaluate(e, p));
    } catch (const EvalError& err) {
      if (err.kind == EvalError::Kind::UnboundParameter) throw;
      continue;  // guard hit inside the declared domain margin: resample
    }
    r.max_residual = std::max(r.max_residual, resid);
    ++r.samples;
  }
  r.is_zero = r.max_residual <= tol;
  return r;
}

}  // namespace akgeo
