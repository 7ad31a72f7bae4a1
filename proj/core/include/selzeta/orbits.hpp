#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "selzeta/words.hpp"

namespace selzeta::dyn {

using geo::complex;
using geo::SchottkyGroup;
using geo::Word;

/// Piecewise expanding interval map T(x) = gens[j](x) for x in I_j.
/// Periodic points of T of period n correspond one-to-one with cyclically
/// admissible words of length n: the word's composed map contracts the disc
/// indexed by the inverse of its first letter, and its attracting fixed point
/// is the periodic point.
struct BowenSeriesMap {
  const SchottkyGroup* group;
  explicit BowenSeriesMap(const SchottkyGroup& g) : group(&g) {}
  /// Index of the interval containing x, or nullopt.
  std::optional<int> interval_index(double x) const;
  /// T(x); requires x in some I_j.
  double apply(double x) const;
};

/// Periodic orbit of the interval map, one entry per rotation class.
struct OrbitClass {
  Word word;              // lexicographically minimal rotation
  double fixed_point = 0; // attracting fixed point of the contracting word map
  double multiplier = 0;  // (T^n)'(x) > 1 at the periodic point
  double length = 0;      // log(multiplier) = geodesic length of the class
  bool primitive = true;
};

/// All period-n orbit classes (cyclically admissible words up to rotation).
std::vector<OrbitClass> periodic_orbits(const SchottkyGroup& g, int n);

/// Sum over T^q-periodic points of Lambda^{-s} / (1 - Lambda^{-1}), where
/// Lambda is the orbit multiplier. Terms are accumulated in decreasing
/// magnitude with compensated summation, so the result is reproducible.
complex periodic_point_sum(const SchottkyGroup& g, complex s, int q);

/// (1/n) log sum over T^n-periodic points of multiplier^{-sigma}, evaluated
/// by log-sum-exp over sorted terms.
double pressure_orbit(const SchottkyGroup& g, double sigma, int n);

struct LengthEntry {
  double length = 0;
  Word word;
  bool primitive = true;
};

/// Geodesic lengths of primitive orbit classes of word length <= n_max,
/// sorted ascending (one entry per oriented class).
std::vector<LengthEntry> length_spectrum(const SchottkyGroup& g, int n_max);

/// Collapse entries with equal length (tolerance) into (length, count).
std::vector<std::pair<double, int>> group_lengths(const std::vector<LengthEntry>& entries,
                                                  double tol = 1e-9);

}  // namespace selzeta::dyn
