#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "selzeta/pressure.hpp"

using namespace selzeta;

namespace {
geo::SchottkyGroup fixture() { return geo::symmetric_group(2, {-3, -1, 1, 3}, 0.5); }
}  // namespace

TEST_CASE("pressure at 0 is the subshift entropy log(2p-1)") {
  geo::SchottkyGroup g = fixture();
  CHECK(dyn::pressure_eig(g, 0.0, 24) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("cylinder pressure is exactly -2 t sigma") {
  geo::SchottkyGroup cyl = geo::cylinder_group(1.0);
  for (double sig : {0.0, 0.3, 1.0})
    CHECK(std::abs(dyn::pressure_eig(cyl, sig, 24) - (-2 * sig)) < 1e-11);
}

TEST_CASE("eigenvalue route is converged in K") {
  geo::SchottkyGroup g = fixture();
  for (double sig : {0.1, 0.5}) {
    double a = dyn::pressure_eig(g, sig, 30);
    double b = dyn::pressure_eig(g, sig, 60);
    CHECK(std::abs(a - b) < 1e-10);
  }
}

TEST_CASE("orbit and eigenvalue estimators cross-validate") {
  geo::SchottkyGroup g = fixture();
  for (double sig : {0.1, 0.5}) {
    double pe = dyn::pressure_eig(g, sig, 40);
    double po10 = dyn::pressure_orbit(g, sig, 10);
    double po12 = dyn::pressure_orbit(g, sig, 12);
    CHECK(std::abs(po10 - pe) < 2e-4);
    CHECK(std::abs(po12 - pe) < 1.2e-4);
    // gap shrinks with the orbit length
    CHECK(std::abs(po12 - pe) < std::abs(dyn::pressure_orbit(g, sig, 6) - pe));
  }
}

TEST_CASE("pressure is strictly decreasing and convex on a grid") {
  geo::SchottkyGroup g = fixture();
  std::vector<double> sig, val;
  for (int i = 0; i <= 10; ++i) {
    sig.push_back(i * 0.1);
    val.push_back(dyn::pressure_eig(g, sig.back(), 30));
  }
  for (size_t i = 0; i + 1 < val.size(); ++i) CHECK(val[i + 1] < val[i]);
  for (size_t i = 1; i + 1 < val.size(); ++i)
    CHECK(val[i + 1] - 2 * val[i] + val[i - 1] >= -1e-8);
}

TEST_CASE("dimension root: cylinder collapses to zero") {
  geo::SchottkyGroup cyl = geo::cylinder_group(1.0);
  auto res = dyn::hausdorff_dimension(cyl, 1e-10, 24);
  CHECK(res.delta == 0.0);
}

TEST_CASE("dimension root: fixture solves P(delta) = 0 and matches box counting") {
  geo::SchottkyGroup g = fixture();
  auto res = dyn::hausdorff_dimension(g, 1e-10, 40);
  CHECK(res.delta > 0.2);
  CHECK(res.delta < 0.4);
  CHECK(res.residual <= 1e-10);
  CHECK(std::abs(dyn::pressure_eig(g, res.delta, 40)) <= 1e-10);
  double boxed = oracles::box_counting_delta(g);
  CHECK(std::abs(res.delta - boxed) < 5e-3);
}

TEST_CASE("shrinking the discs strictly decreases the dimension") {
  geo::SchottkyGroup big = fixture();
  geo::SchottkyGroup small = geo::symmetric_group(2, {-3, -1, 1, 3}, 0.25);
  auto d_big = dyn::hausdorff_dimension(big, 1e-10, 40);
  auto d_small = dyn::hausdorff_dimension(small, 1e-10, 40);
  CHECK(d_small.delta < d_big.delta);
  double boxed = oracles::box_counting_delta(small);
  CHECK(std::abs(d_small.delta - boxed) < 5e-3);
}

TEST_CASE("pressure derivative: cylinder exact, fixture matches finite differences") {
  geo::SchottkyGroup cyl = geo::cylinder_group(1.0);
  CHECK(dyn::pressure_derivative(cyl, 0.4, 24) == doctest::Approx(-2.0).epsilon(1e-11));

  geo::SchottkyGroup g = fixture();
  auto dim = dyn::hausdorff_dimension(g, 1e-10, 40);
  for (double sig : {0.2, dim.delta}) {
    double analytic = dyn::pressure_derivative(g, sig, 40);
    double fd = oracles::central_difference(
        [&](double x) { return dyn::pressure_eig(g, x, 40); }, sig, 1e-4);
    CHECK(std::abs(analytic - fd) < 1e-6);
  }
  // negative at the dimension root
  CHECK(dyn::pressure_derivative(g, dim.delta, 40) < 0);
}

TEST_CASE("pressure curve samples carry both estimators") {
  geo::SchottkyGroup g = fixture();
  auto curve = dyn::pressure_curve(g, {0.0, 0.5}, 30, 8);
  REQUIRE(curve.size() == 2);
  CHECK(curve[0].sigma == 0.0);
  CHECK(curve[0].p_eig == doctest::Approx(std::log(3.0)).epsilon(1e-10));
  CHECK(std::abs(curve[1].p_orbit - curve[1].p_eig) < 1e-3);
}
