#pragma once

#include <optional>
#include <string>

#include "selzeta/bergman.hpp"

namespace selzeta::zeta {

using geo::complex;
using geo::SchottkyGroup;

struct ZetaOptions {
  int K = 40;                       // truncation degree on the generator-disc cover
  int refined_K = 20;               // truncation degree on refined covers
  double refined_threshold = 10.0;  // |Im s| above which a refined cover is used
  double h_min = 1e-4;              // lower clamp for the refined scale h = 1/|Im s|
  int quad_factor = 4;
  int threads = 1;
};

/// A zeta evaluation tagged with the method and truncation that produced it.
struct ZetaValue {
  complex s;
  complex value;
  double log_abs = 0;
  std::string method;  // det | det_power | trace | euler
  std::string cover;   // coarse | refined | none
  int K = 0;
  int n = 1;       // operator power (det_power)
  int q_max = 0;   // trace route truncation
  double cutoff = 0;  // euler route geodesic length cutoff
  double h = 0;
  double tail_estimate = 0;
  std::string warning;  // empty when clean
};

/// det(I - L_s) on the cover selected by |Im s| (refined above the threshold
/// when a word length 1 operator is certified there, generator discs
/// otherwise). This is the route that continues across the whole plane.
ZetaValue zeta_det(const SchottkyGroup& g, complex s, const ZetaOptions& opts = {});

/// det(I - L_s^n) via the n-th matrix power; its zero set contains the zero
/// set of zeta_det.
ZetaValue zeta_det_power(const SchottkyGroup& g, complex s, int n, const ZetaOptions& opts = {});

/// exp(-sum_{q<=q_max} tr(L_s^q)/q) from periodic-point data only. Converges
/// for Re s above the dimension; sets a warning when the partial sums are not
/// visibly Cauchy.
ZetaValue zeta_trace_exp(const SchottkyGroup& g, complex s, int q_max);

/// Product over primitive orbit classes with geodesic length <= len_cutoff
/// and over k >= 0 of (1 - e^{-(s+k) length}); k is truncated once the factor
/// differs from 1 by less than 1e-14. Enumeration stops at the first word
/// length whose shortest class exceeds the cutoff (throws
/// EnumerationBudgetExceeded past max_word_len, CutoffTooSmall when no class
/// qualifies).
ZetaValue zeta_euler(const SchottkyGroup& g, complex s, double len_cutoff,
                     int max_word_len = 24);

struct GridSpec {
  double sig_lo = 0, sig_hi = 0;
  double t_lo = 0, t_hi = 0;
  double dsig = 0.1, dt = 0.1;
};

struct ZetaGrid {
  std::vector<double> sigmas, ts;
  std::vector<double> log_abs;  // row-major over (t, sigma)
  std::vector<double> arg;      // unwrapped along each row from the right edge
  int K = 0;
  std::string cover;
  bool resolution_warning = false;  // adjacent log|Z| jump >= 5
  double at(size_t it, size_t is) const { return log_abs[it * sigmas.size() + is]; }
};

/// log|Z| and continuous argument on a rectangle; the cover is fixed once per
/// grid from the largest |t| in the spec, rows are evaluated independently.
ZetaGrid log_zeta_grid(const SchottkyGroup& g, const GridSpec& spec,
                       const ZetaOptions& opts = {});

/// Cover/degree policy shared by the determinant routes and the resonance
/// scanner: refined cover at h = clamp(1/im_scale) once im_scale passes the
/// threshold and a word length 1 operator is certified on it.
struct CoverChoice {
  bergman::DiscCover cover;
  int K = 0;
};
CoverChoice pick_cover(const SchottkyGroup& g, double im_scale, const ZetaOptions& opts);

struct LogDet {
  double log_abs = 0;
  double arg = 0;
  complex value;
};
/// det(I - M) through a partial-pivot LU, returned with a stable log form.
LogDet logdet_I_minus(const Eigen::MatrixXcd& M);

}  // namespace selzeta::zeta
