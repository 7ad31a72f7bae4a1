#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "selzeta/bergman.hpp"
#include "selzeta/pressure.hpp"
#include "selzeta/zeta.hpp"

using namespace selzeta;
using geo::complex;

namespace {
geo::SchottkyGroup fixture() { return geo::symmetric_group(2, {-3, -1, 1, 3}, 0.5); }
}  // namespace

TEST_CASE("refined cover: cylinder has two components around the fixed points") {
  geo::SchottkyGroup cyl = geo::cylinder_group(1.0);
  auto cover = bergman::refined_cover(cyl, 0.01);
  REQUIRE(cover.size() == 2);
  CHECK(cover.discs[0].center == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(cover.discs[1].center == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(cover.max_diam >= 2 * 0.01);
  CHECK(cover.max_diam <= 3 * 0.01);
}

TEST_CASE("refined cover components are disjoint and inside parent intervals") {
  geo::SchottkyGroup g = fixture();
  for (double h : {1e-2, 1e-3}) {
    auto cover = bergman::refined_cover(g, h);
    for (int i = 0; i + 1 < cover.size(); ++i) {
      double gap = (cover.discs[i + 1].center - cover.discs[i + 1].radius) -
                   (cover.discs[i].center + cover.discs[i].radius);
      CHECK(gap > 0);
    }
    for (int i = 0; i < cover.size(); ++i) {
      geo::Interval iv = geo::disc_interval(cover.discs[i]);
      geo::Interval parent = g.interval(cover.parent[i]);
      CHECK(parent.lo <= iv.lo);
      CHECK(iv.hi <= parent.hi);
      CHECK(iv.length() <= cover.max_diam + 1e-15);
    }
    CHECK(cover.max_diam / h < 10);
  }
}

TEST_CASE("cover counting scales like the dimension") {
  geo::SchottkyGroup g = fixture();
  std::vector<double> hs{1e-2, 3e-3, 1e-3, 3e-4};
  std::vector<double> x, y;
  for (double h : hs) {
    auto cover = bergman::refined_cover(g, h);
    x.push_back(std::log(1 / h));
    y.push_back(std::log(static_cast<double>(cover.size())));
  }
  double slope = oracles::least_squares_slope(x, y);
  double delta = dyn::hausdorff_dimension(g, 1e-10, 40).delta;
  CHECK(std::abs(slope - delta) < 0.05);
}

TEST_CASE("separation margins certify word length 1 on the fixtures") {
  geo::SchottkyGroup g = fixture();
  auto cover = bergman::refined_cover(g, 1e-2);
  double m1 = bergman::check_separation(g, cover, 1);
  CHECK(m1 > 0);
  double m4 = bergman::check_separation(g, cover, 4);
  CHECK(m4 > 0);
  CHECK(m4 >= m1 - 1e-12);  // images only shrink with the word length

  geo::SchottkyGroup cyl = geo::cylinder_group(1.0);
  auto ccover = bergman::refined_cover(cyl, 0.05);
  for (int n : {1, 2, 3}) CHECK(bergman::check_separation(cyl, ccover, n) > 0);
}

TEST_CASE("cylinder determinant against the closed-form product") {
  geo::SchottkyGroup cyl = geo::cylinder_group(1.0);
  auto cover = bergman::coarse_cover(cyl);
  complex expect = oracles::cylinder_zeta(1.0, 1.0);
  auto op24 = bergman::build_operator(cyl, cover, 1.0, 24);
  CHECK(std::abs(zeta::logdet_I_minus(op24.matrix).value - expect) < 1e-10);
  // truncation converges geometrically: K=20 is within 3e-9 already
  auto op20 = bergman::build_operator(cyl, cover, 1.0, 20);
  CHECK(std::abs(zeta::logdet_I_minus(op20.matrix).value - expect) < 3e-9);
}

TEST_CASE("matrix entries at s and conj(s) are conjugate") {
  geo::SchottkyGroup g = fixture();
  auto cover = bergman::coarse_cover(g);
  complex s{0.7, 2.3};
  auto a = bergman::build_operator(g, cover, s, 16);
  auto b = bergman::build_operator(g, cover, std::conj(s), 16);
  double worst = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      worst = std::max(worst, std::abs(a.matrix(i, j) - std::conj(b.matrix(i, j))));
  CHECK(worst < 1e-13);
}

TEST_CASE("quadrature is converged at the default sampling factor") {
  geo::SchottkyGroup g = fixture();
  auto cover = bergman::coarse_cover(g);
  complex s{1.3, 0.9};
  auto a = bergman::build_operator(g, cover, s, 20, 1, 4);
  auto b = bergman::build_operator(g, cover, s, 20, 1, 8);
  double worst = (a.matrix - b.matrix).cwiseAbs().maxCoeff();
  CHECK(worst < 1e-12);
}

TEST_CASE("column coefficients decay geometrically") {
  geo::SchottkyGroup g = fixture();
  auto cover = bergman::coarse_cover(g);
  auto op = bergman::build_operator(g, cover, complex{0.5, 1.0}, 32);
  // compare row-degree blocks: norms at degree bands [8,16) vs [16,24)
  double lo = 0, hi = 0;
  for (int d = 0; d < cover.size(); ++d)
    for (int k = 8; k < 16; ++k) {
      lo += op.matrix.row(d * 32 + k).norm();
      hi += op.matrix.row(d * 32 + k + 8).norm();
    }
  CHECK(hi < 0.5 * lo);
}

TEST_CASE("matrix trace equals the periodic-point sum") {
  geo::SchottkyGroup g = fixture();
  auto cover = bergman::coarse_cover(g);
  for (int q : {1, 2, 3}) {
    complex oracle = bergman::trace_oracle(g, 2.0, q);
    auto op = bergman::build_operator(g, cover, 2.0, 40, q);
    CHECK(std::abs(bergman::operator_trace(op) - oracle) <= 1e-10 * std::abs(oracle));
  }
  complex s{0.5, 10.0};
  complex oracle = bergman::trace_oracle(g, s, 2);
  auto op = bergman::build_operator(g, cover, s, 40, 2);
  CHECK(std::abs(bergman::operator_trace(op) - oracle) <= 1e-8 * std::abs(oracle));
}

TEST_CASE("cylinder trace closed form") {
  geo::SchottkyGroup cyl = geo::cylinder_group(1.0);
  complex v = bergman::trace_oracle(cyl, 2.0, 1);
  CHECK(v.real() == doctest::Approx(2 * std::exp(-4.0) / (1 - std::exp(-2.0))).epsilon(1e-13));
  auto op = bergman::build_operator(cyl, bergman::coarse_cover(cyl), 2.0, 30, 1);
  CHECK(std::abs(bergman::operator_trace(op) - v) < 1e-12);
}

TEST_CASE("operator derivative matches finite differences") {
  geo::SchottkyGroup g = fixture();
  auto cover = bergman::coarse_cover(g);
  complex s{0.8, 0.5};
  auto [op, dmat] = bergman::build_operator_with_derivative(g, cover, s, 16);
  double eps = 1e-5;
  auto plus = bergman::build_operator(g, cover, s + eps, 16);
  auto minus = bergman::build_operator(g, cover, s - eps, 16);
  Eigen::MatrixXcd fd = (plus.matrix - minus.matrix) / (2 * eps);
  CHECK((fd - dmat).cwiseAbs().maxCoeff() < 1e-6);
  // value part of the pair matches the plain assembly
  auto plain = bergman::build_operator(g, cover, s, 16);
  CHECK((plain.matrix - op.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("leading eigenvalue at real s is positive with positive eigenvector") {
  geo::SchottkyGroup g = fixture();
  auto op = bergman::build_operator(g, bergman::coarse_cover(g), 0.313, 24);
  Eigen::MatrixXd M = op.matrix.real();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(M.rows());
  for (int i = 0; i < 2000; ++i) v = (M * v).normalized();
  double lambda = v.dot(M * v);
  CHECK(lambda > 0);
  // eigenvector positivity at the degree-0 sample nodes (constants block)
  double sign = v(0) > 0 ? 1.0 : -1.0;
  for (int d = 0; d < 4; ++d) CHECK(sign * v(d * 24) > 0);
}

TEST_CASE("uncertified refined operator is rejected") {
  geo::SchottkyGroup g = fixture();
  // h near its upper bound merges everything into fat components whose images
  // under a single letter escape; the direct build must then refuse.
  auto cover = bergman::refined_cover(g, 0.12);
  double margin = 0;
  bool escapes = false;
  try {
    margin = bergman::check_separation(g, cover, 1);
  } catch (const Error& e) {
    escapes = (e.code() == errc::image_escapes_cover);
  }
  if (escapes || margin <= 0) {
    CHECK_THROWS_AS(bergman::build_operator(g, cover, 1.0, 8, 1), Error);
  } else {
    // geometry turned out separated after all: the build must succeed
    CHECK_NOTHROW(bergman::build_operator(g, cover, 1.0, 8, 1));
  }
}
