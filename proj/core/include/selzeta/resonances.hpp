#pragma once

#include <optional>

#include "selzeta/zeta.hpp"

namespace selzeta::scan {

using geo::complex;
using geo::SchottkyGroup;

struct Box {
  double re_lo = 0, re_hi = 0;
  double im_lo = 0, im_hi = 0;
  double width() const { return re_hi - re_lo; }
  double height() const { return im_hi - im_lo; }
  bool contains(complex s) const {
    return re_lo <= s.real() && s.real() <= re_hi && im_lo <= s.imag() && s.imag() <= im_hi;
  }
};

struct ScanOptions {
  int K = 40;
  int refined_K = 20;
  double refined_threshold = 10.0;
  double h_min = 1e-4;
  int quad_factor = 4;
  double tol = 1e-9;          // Newton residual bound, relative to the local scale
  double resolve_size = 4e-3; // cell size at which Newton takes over
  int max_depth = 48;
  int threads = 1;

  zeta::ZetaOptions zeta_options() const {
    return {K, refined_K, refined_threshold, h_min, quad_factor, threads};
  }
};

/// A located zeta zero with its argument-principle multiplicity.
struct Resonance {
  complex s;
  int multiplicity = 1;
  double newton_residual = 0;  // |Z| at the zero over the local |Z| scale
  std::string box_id;          // subdivision path that isolated it
};

/// Cell where subdivision or Newton could not finish; the winding count over
/// it is still exact and is reported as an interval contribution.
struct UnresolvedRegion {
  Box box;
  int count = 0;
  std::string box_id;
};

struct ScanResult {
  std::vector<Resonance> zeros;
  std::vector<UnresolvedRegion> unresolved;
  Box box_used;    // after any boundary perturbation
  int total_count = 0;
};

/// Zeros (with multiplicity) inside the rectangle by the winding integral of
/// Z'/Z over its boundary, Z' assembled analytically. The boundary is pushed
/// outward through the deterministic sequence 1e-2, 2e-2, 4e-2 when a zero
/// sits too close to it. Throws NonIntegerWindingNumber /
/// ContourTooCloseToZero when every perturbation fails.
int count_zeros_box(const SchottkyGroup& g, const Box& box, const ScanOptions& opts = {});

/// Quadtree subdivision of the rectangle down to cells holding one cluster,
/// then multiplicity-aware Newton on Z'/Z; every zero is certified by a
/// second winding count on a small square around it. Total multiplicity
/// equals the box count; cells that fail to resolve are returned as intervals
/// rather than dropped.
ScanResult locate_zeros(const SchottkyGroup& g, const Box& box, const ScanOptions& opts = {});

struct StripCount {
  double sigma = 0;
  double T = 0;
  int N = 0;       // zeros with sigma <= Re <= delta, 0 <= Im <= T
  int M = 0;       // same with T/2 <= Im <= T
  int N_lo = 0, N_hi = 0;  // interval when unresolved regions intersect
  int M_lo = 0, M_hi = 0;
};

/// Strip counts from one scan over the enclosing region; delta is the
/// dimension (right strip edge is delta + 0.02, inside the zero-free band).
std::vector<StripCount> strip_counts(const SchottkyGroup& g, const std::vector<double>& sigmas,
                                     const std::vector<double>& Ts, double delta,
                                     const ScanOptions& opts = {});

struct WeylFitRow {
  double sigma = 0;
  double exponent = 0;  // least-squares slope of log N vs log T
  double residual = 0;  // rms residual of the fit
  int points_used = 0;
  bool flagged = false;  // exponent above 1 + delta + 0.1
};

/// Per-sigma growth exponents of the counting function. Rows with fewer than
/// 4 positive counts are skipped; throws InsufficientData when none is usable.
std::vector<WeylFitRow> weyl_fit(const std::vector<StripCount>& counts, double delta);

struct TauCurve {
  double nu = 0;
  double delta = 0;
  double theta_bar = 0;      // measured contraction lower rate used for nu
  double p_half = 0;         // pressure at delta/2
  double tau_prime_at_half = 0;  // (nu/2) * P'(delta)
  std::vector<std::pair<double, double>> samples;  // (sigma, tau)
};

/// Density exponent curve tau(sigma) = max{delta + (nu/2) P(sigma + delta/2),
/// 7 delta / 8} on a sigma grid in [delta/2, delta]. The pressure is anchored
/// so P(delta) = 0 exactly, hence tau(delta/2) = delta exactly. nu defaults to
/// min{delta/(8|log theta_bar|), delta/(16 P(delta/2)), (1-delta)/P(delta/2)}
/// from measured quantities; an override outside (0, nu_max] throws
/// NuOutOfRange.
TauCurve tau_curve(const SchottkyGroup& g, std::optional<double> nu_override,
                   const std::vector<double>& sigma_grid, int K = 40);

}  // namespace selzeta::scan
