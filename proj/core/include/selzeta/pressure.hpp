#pragma once

#include "selzeta/orbits.hpp"

namespace selzeta::dyn {

/// log of the leading eigenvalue of the discretized weight-sigma operator on
/// the generator-disc cover. The leading eigenvalue is real, simple and
/// positive; computed by power iteration (throws NonConvergedEigenvalue).
double pressure_eig(const SchottkyGroup& g, double sigma, int K = 40);

/// d/dsigma of pressure_eig by first-order eigenvalue perturbation with the
/// analytically assembled dM/dsigma: (u^T M' v) / (lambda u^T v) for left/right
/// eigenvectors u, v. Negative at the dimension root.
double pressure_derivative(const SchottkyGroup& g, double sigma, int K = 40);

struct DimensionResult {
  double delta = 0;
  double residual = 0;  // |P(delta)|
  double bracket_lo = 0, bracket_hi = 0;
  int K = 0;
};

/// Root of sigma -> pressure_eig(sigma) on [0, 1] by bracketed secant with
/// bisection fallback; P is strictly decreasing so the root is the dimension
/// of the limit set. Elementary groups have P(0) = 0 and get delta = 0.
DimensionResult hausdorff_dimension(const SchottkyGroup& g, double tol = 1e-10, int K = 40);

struct PressureSample {
  double sigma = 0;
  double p_eig = 0;
  double p_orbit = 0;
};

/// Both pressure estimators on a sigma grid (CSV backing for the CLI).
std::vector<PressureSample> pressure_curve(const SchottkyGroup& g,
                                           const std::vector<double>& sigmas, int K,
                                           int n_orbit);

}  // namespace selzeta::dyn
