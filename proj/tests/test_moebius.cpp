#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "selzeta/schottky.hpp"

using namespace selzeta;
using geo::Disc;
using geo::Mobius;

TEST_CASE("pairing map formula and circle-to-circle identity") {
  Disc from{-3, 0.5}, to{1, 0.5};
  Mobius m = geo::make_pairing(from, to);
  // z -> 1 - 0.25/(z+3), up to unit-determinant scaling
  for (double x : {-3.6, -2.7, -3.4}) {
    CHECK(m.apply(x) == doctest::Approx(1 - 0.25 / (x + 3)).epsilon(1e-14));
  }
  // 16 boundary points: |z - c_from| = r_from => |image - c_to| = r_to
  for (int k = 0; k < 16; ++k) {
    double th = 2 * M_PI * k / 16;
    geo::complex z{from.center + from.radius * std::cos(th), from.radius * std::sin(th)};
    CHECK(std::abs(m.apply(z) - geo::complex{to.center, 0}) ==
          doctest::Approx(to.radius).epsilon(1e-12));
  }
  // interior point maps outside the closed target disc
  double img = m.apply(from.center + from.radius / 2);
  CHECK(std::abs(img - to.center) > to.radius);
  CHECK_THROWS_AS(geo::make_pairing(Disc{0, 0}, to), Error);
}

TEST_CASE("cylinder fixture validates with the exact boundary pairing") {
  geo::SchottkyGroup g = geo::cylinder_group(1.0);
  CHECK(g.p == 1);
  CHECK(g.elementary);
  double ch = std::cosh(1.0), sh = std::sinh(1.0);
  CHECK(g.discs[0].center == doctest::Approx(-ch / sh));
  CHECK(g.discs[0].radius == doctest::Approx(1 / sh));
  CHECK(g.gens[0].a == doctest::Approx(ch));
  // unit determinant after normalization
  for (const Mobius& m : g.gens)
    CHECK(m.a * m.d - m.b * m.c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("overlapping discs are rejected") {
  std::vector<Disc> discs{{-1, 1.5}, {1, 1.5}};
  std::vector<Mobius> gens{geo::make_pairing(discs[0], discs[1])};
  CHECK_THROWS_AS(geo::validate_schottky(discs, gens), Error);
  try {
    geo::validate_schottky(discs, gens);
  } catch (const Error& e) {
    CHECK(e.code() == errc::discs_overlap);
  }
}

TEST_CASE("symmetric fixture p=2 validates") {
  geo::SchottkyGroup g = geo::symmetric_group(2, {-3, -1, 1, 3}, 0.5);
  CHECK(g.letters() == 4);
  CHECK(!g.elementary);
  CHECK(g.min_disjointness_margin() > 0.99);
  // pairing orientation: gens[i] inverse stored at i+p
  for (int i = 0; i < 2; ++i) {
    Mobius prod = g.gens[i] * g.gens[i + 2];
    CHECK(prod.is_identity(1e-12));
  }
}

TEST_CASE("wrong pairing matrix is rejected") {
  std::vector<Disc> discs{{-3, 0.5}, {-1, 0.5}, {1, 0.5}, {3, 0.5}};
  // generator 1 pairs disc 1 with disc 4 instead of disc 3
  std::vector<Mobius> gens{geo::make_pairing(discs[0], discs[3]),
                           geo::make_pairing(discs[1], discs[3])};
  try {
    geo::validate_schottky(discs, gens);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::pairing_violated);
  }
}

TEST_CASE("negative determinant input is rejected") {
  std::vector<Disc> discs{{-3, 0.5}, {-1, 0.5}, {1, 0.5}, {3, 0.5}};
  std::vector<Mobius> gens{geo::make_pairing(discs[0], discs[2]),
                           geo::make_pairing(discs[1], discs[3])};
  gens[0] = {gens[0].a, gens[0].b, -gens[0].c, -gens[0].d};
  try {
    geo::validate_schottky(discs, gens);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::nonunit_determinant);
  }
}

TEST_CASE("hyperbolic fixed point and multiplier") {
  geo::SchottkyGroup g = geo::cylinder_group(1.0);
  // generator fixes +-1, attracting at +1 with gamma' = e^{-2}
  double x = geo::attracting_fixed_point(g.gens[0]);
  CHECK(x == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.gens[0].derivative(x) == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  CHECK(geo::log_multiplier(g.gens[0]) == doctest::Approx(2.0).epsilon(1e-14));
  Mobius rot{std::cos(0.3), -std::sin(0.3), std::sin(0.3), std::cos(0.3)};
  CHECK_THROWS_AS(geo::log_multiplier(rot), Error);
}

TEST_CASE("group JSON round trip") {
  geo::SchottkyGroup g = geo::symmetric_group(2, {-3, -1, 1, 3}, 0.5);
  auto j = geo::group_to_json(g);
  geo::SchottkyGroup g2 = geo::group_from_json(j);
  CHECK(g2.p == g.p);
  for (int i = 0; i < g.letters(); ++i) {
    CHECK(g2.discs[i].center == doctest::Approx(g.discs[i].center));
    CHECK(g2.gens[i].a == doctest::Approx(g.gens[i].a).epsilon(1e-14));
  }
}

TEST_CASE("fixture grammar") {
  geo::SchottkyGroup g = geo::parse_group_spec("cylinder:t=1.0");
  CHECK(g.p == 1);
  geo::SchottkyGroup g2 = geo::parse_group_spec("symmetric:p=2,centers=[-3,-1,1,3],radius=0.5");
  CHECK(g2.p == 2);
  geo::SchottkyGroup g3 = geo::parse_group_spec("symmetric:p=2,centers=-3;-1;1;3,radius=0.5");
  CHECK(g3.discs[3].center == doctest::Approx(3.0));
  CHECK_THROWS_AS(geo::parse_group_spec("torus:q=1"), Error);
}
