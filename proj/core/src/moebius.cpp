#include "selzeta/moebius.hpp"

#include <algorithm>

namespace selzeta::geo {

Mobius normalized(const Mobius& m) {
  double det = Mobius::determinant(m);
  if (!(det > 0))
    fail(errc::nonunit_determinant, "matrix determinant must be positive, got " + std::to_string(det));
  double s = 1.0 / std::sqrt(det);
  return {m.a * s, m.b * s, m.c * s, m.d * s};
}

double log_multiplier(const Mobius& m) {
  double half_tr = std::abs(m.trace()) / 2;
  if (!(half_tr > 1))
    fail(errc::non_hyperbolic_element, "|trace| <= 2, trace = " + std::to_string(m.trace()));
  return 2 * std::acosh(half_tr);
}

double attracting_fixed_point(const Mobius& m) {
  if (!is_hyperbolic(m))
    fail(errc::non_hyperbolic_element, "|trace| <= 2, trace = " + std::to_string(m.trace()));
  if (m.c == 0)
    fail(errc::non_hyperbolic_element, "c = 0: fixed point at infinity");
  // Roots of c x^2 + (d-a) x - b, written to avoid cancellation.
  double B = m.d - m.a;
  double disc = std::sqrt(m.trace() * m.trace() - 4);
  double q = -0.5 * (B + (B >= 0 ? disc : -disc));
  double r1 = q / m.c;
  double r2 = -m.b / q;  // product of roots = -b/c
  // Attracting root: |gamma'| < 1 there, i.e. |c x + d| > 1.
  return std::abs(m.c * r1 + m.d) > std::abs(m.c * r2 + m.d) ? r1 : r2;
}

Interval map_interval(const Mobius& m, const Interval& iv) {
  double u = m.apply(iv.lo), v = m.apply(iv.hi);
  return {std::min(u, v), std::max(u, v)};
}

}  // namespace selzeta::geo
