#pragma once

// Hodge star on 2-forms in Riemannian signature (** = id). The orientation is
// the metric's: epsilon_{1234} = orientation in the coordinate basis, which
// for coframe-built metrics makes i(M^Mbar + N^Nbar) self-dual.

#include "akgeo/forms.hpp"
#include "akgeo/metric.hpp"

namespace akgeo {

namespace detail {

inline int permutation_sign_4(int a, int b, int c, int d) {
  int idx[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3 - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (int i = 0; i < 3; ++i)
    if (idx[i] == idx[i + 1]) return 0;
  return sign;
}

}  // namespace detail

inline KForm hodge_star(const MetricField& g, const KForm& w) {
  if (w.degree() != 2) throw Error("hodge_star implemented for 2-forms only");
  const ExprMatrix& ginv = g.inverse_components();
  const auto& pairs = detail::basis_indices(2);

  // Raise both indices: w^{cd} for each increasing pair (c,d).
  std::array<Expression, 6> raised;
  for (int q = 0; q < 6; ++q) {
    int c = pairs[q][0], d = pairs[q][1];
    std::vector<Expression> terms;
    for (int p = 0; p < 6; ++p) {
      int e = pairs[p][0], f = pairs[p][1];
      if (w[p].is_zero()) continue;
      // contribution of w_ef and w_fe = -w_ef
      Expression coeff = ginv[c - 1][e - 1] * ginv[d - 1][f - 1] -
                         ginv[c - 1][f - 1] * ginv[d - 1][e - 1];
      if (coeff.is_zero()) continue;
      terms.push_back(coeff * w[p]);
    }
    raised[q] = make_sum(std::move(terms));
  }

  Expression factor = g.orientation() < 0 ? -g.sqrt_det() : g.sqrt_det();
  KForm out(2);
  for (int q = 0; q < 6; ++q) {
    int a = pairs[q][0], b = pairs[q][1];
    // complementary increasing pair
    std::vector<int> comp;
    for (int k = 1; k <= 4; ++k)
      if (k != a && k != b) comp.push_back(k);
    int sign = detail::permutation_sign_4(a, b, comp[0], comp[1]);
    int pos = detail::position_of(2, comp);
    Expression term = factor * raised[pos];
    out[q] = sign > 0 ? term : -term;
  }
  return out;
}

}  // namespace akgeo
