#pragma once

// Test-only oracles, kept independent of the implementation paths they check:
// closed forms for the cylinder, a box-counting dimension estimate from raw
// word-interval covers, brute-force enumerations, finite differences.

#include <complex>
#include <functional>
#include <vector>

#include "selzeta/schottky.hpp"
#include "selzeta/words.hpp"

namespace oracles {

using complex = std::complex<double>;

/// Cylinder zeta determinant: product over k >= 0 of (1 - e^{-2t(s+k)})^2,
/// truncated at machine precision (the square counts the two oriented word
/// classes of the single primitive geodesic, length 2t).
complex cylinder_zeta(complex s, double t);

/// Box-counting estimate of the limit-set dimension: word intervals refined
/// adaptively (depth cap) to below eps/8, occupied eps-boxes counted on a
/// dyadic grid, least-squares slope of log N against log(1/eps) over
/// eps = 2^-j, j in [j_min, j_max].
double box_counting_delta(const selzeta::geo::SchottkyGroup& g, int depth_cap = 12,
                          int j_min = 16, int j_max = 34);

/// Leaves of the adaptive word-interval refinement (independent recursion).
std::vector<selzeta::geo::Interval> word_interval_cover(const selzeta::geo::SchottkyGroup& g,
                                                        double target_len, int depth_cap);

/// Plain recursive enumeration of admissible words (no shared machinery with
/// the iterative enumerator under test).
std::vector<selzeta::geo::Word> brute_force_words(int p, int n, int excluded_last = -1);

/// Least-squares slope of y against x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Central finite difference with step h.
double central_difference(const std::function<double(double)>& f, double x, double h);

}  // namespace oracles
