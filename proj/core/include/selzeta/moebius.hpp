#pragma once

#include <cmath>
#include <complex>

#include "selzeta/errors.hpp"

namespace selzeta::geo {

using complex = std::complex<double>;

/// Real Moebius transformation z -> (az+b)/(cz+d), kept at determinant ad-bc = 1.
/// The sign of the matrix is not meaningful (PSL(2,R)).
struct Mobius {
  double a = 1, b = 0, c = 0, d = 1;

  static Mobius identity() { return {}; }

  complex apply(complex z) const { return (a * z + b) / (c * z + d); }
  double apply(double x) const { return (a * x + b) / (c * x + d); }

  complex derivative(complex z) const {
    complex den = c * z + d;
    return 1.0 / (den * den);
  }
  double derivative(double x) const {
    double den = c * x + d;
    return 1.0 / (den * den);
  }
  /// d/dx log gamma'(x) = -2c/(cx+d).
  double log_derivative_slope(double x) const { return -2 * c / (c * x + d); }

  double trace() const { return a + d; }

  Mobius inverse() const { return {d, -b, -c, a}; }

  Mobius operator*(const Mobius& o) const {
    Mobius r{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    // Entries of long words grow like the square root of the multiplier, and
    // ad-bc cancels catastrophically there; the compensated determinant stays
    // accurate, so the drift-control rescale is safe at any magnitude.
    double det = determinant(r);
    if (std::isfinite(det) && det > 0.5 && det < 2.0) {
      double s = 1.0 / std::sqrt(det);
      r.a *= s; r.b *= s; r.c *= s; r.d *= s;
    }
    return r;
  }

  /// ad - bc by Kahan's fma trick: accurate even when the products cancel.
  static double determinant(const Mobius& m) {
    double w = m.b * m.c;
    double e = std::fma(-m.b, m.c, w);
    double f = std::fma(m.a, m.d, -w);
    return f + e;
  }

  bool is_identity(double tol = 1e-12) const {
    return std::abs(b) <= tol && std::abs(c) <= tol &&
           std::abs(std::abs(a) - 1) <= tol && std::abs(std::abs(d) - 1) <= tol;
  }
};

/// Rescale an arbitrary real matrix to determinant 1. Fails when det <= 0,
/// which cannot represent an orientation-preserving isometry.
Mobius normalized(const Mobius& m);

/// True for |trace| > 2 (up to tol): the transformation has two real fixed
/// points and a multiplier lambda^2 > 1.
inline bool is_hyperbolic(const Mobius& m, double tol = 1e-12) {
  return std::abs(m.trace()) > 2 + tol;
}

/// log of the multiplier (T^n)' at the repelling fixed point:
/// log Lambda = 2 acosh(|tr|/2).  Stable for huge entries.
double log_multiplier(const Mobius& m);

/// Attracting fixed point of a hyperbolic transformation (the root of
/// c x^2 + (d-a) x - b with |c x + d| > 1).
double attracting_fixed_point(const Mobius& m);

/// Open Euclidean disc orthogonal to the real axis (real center).
struct Disc {
  double center = 0;
  double radius = 0;
};

struct Interval {
  double lo = 0, hi = 0;
  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

inline Interval disc_interval(const Disc& d) {
  return {d.center - d.radius, d.center + d.radius};
}

/// Image of an interval under a Moebius map whose pole lies outside it.
Interval map_interval(const Mobius& m, const Interval& iv);

}  // namespace selzeta::geo
