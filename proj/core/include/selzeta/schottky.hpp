#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "selzeta/moebius.hpp"

namespace selzeta::geo {

/// Schottky data: 2p pairwise disjoint closed discs orthogonal to the real
/// axis and p generators, gens[i] mapping disc i onto the complement of the
/// closed disc i+p. Letters 0..2p-1 index generators and their inverses,
/// gens[i+p] = gens[i]^{-1}. Letter arithmetic is mod 2p.
struct SchottkyGroup {
  int p = 0;
  std::vector<Disc> discs;   // size 2p
  std::vector<Mobius> gens;  // size 2p
  bool elementary = false;   // p == 1: two-point limit set, exactly solvable
  std::vector<double> disjointness_margins;  // gap per unordered disc pair

  int letters() const { return 2 * p; }
  int inverse_letter(int a) const { return (a + p) % (2 * p); }
  const Mobius& generator(int letter) const { return gens[letter]; }
  Interval interval(int j) const { return disc_interval(discs[j]); }
  double min_radius() const;
  double min_disjointness_margin() const;
};

/// Canonical generator pairing two disjoint discs with real centers:
/// z -> c_to - r_from*r_to / (z - c_from), normalized to determinant 1.
/// Maps the boundary of `from` onto the boundary of `to` and the interior of
/// `from` onto the exterior of the closed disc `to`.
Mobius make_pairing(const Disc& from, const Disc& to);

/// Validates raw disc/generator data and returns the group, or throws
/// Error{DiscsOverlap | PairingViolated | NonUnitDeterminant}.
/// `generators` holds the p maps for letters 0..p-1; inverses are derived.
SchottkyGroup validate_schottky(const std::vector<Disc>& discs,
                                const std::vector<Mobius>& generators);

/// Hyperbolic cylinder: two discs D(-+cosh t/sinh t, 1/sinh t) paired by
/// [[cosh t, sinh t], [sinh t, cosh t]]. Elementary (p = 1); accepted because
/// every spectral quantity has a closed form.
SchottkyGroup cylinder_group(double t);

/// p generator discs centered at centers[0..p-1] paired with centers[p..2p-1],
/// all of the given radius, generators from make_pairing.
SchottkyGroup symmetric_group(int p, const std::vector<double>& centers, double radius);

/// Fixture grammar: "cylinder:t=<real>" or
/// "symmetric:p=<int>,centers=<c1;c2;...>,radius=<real>" (also accepts
/// comma-separated centers in brackets: centers=[-3,-1,1,3]).
SchottkyGroup parse_group_spec(const std::string& spec);

/// JSON document with keys p, discs [{center, radius}], generators [[a,b,c,d]].
nlohmann::json group_to_json(const SchottkyGroup& g);
SchottkyGroup group_from_json(const nlohmann::json& j);

}  // namespace selzeta::geo
