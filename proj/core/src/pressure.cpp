#include "selzeta/pressure.hpp"

#include <cmath>

#include "selzeta/bergman.hpp"

namespace selzeta::dyn {

namespace {

constexpr int kPowerIterationCap = 10000;

Eigen::MatrixXd real_operator_matrix(const SchottkyGroup& g, double sigma, int K) {
  bergman::DiscCover cover = bergman::coarse_cover(g);
  auto op = bergman::build_operator(g, cover, complex{sigma, 0}, K);
  return op.matrix.real();
}

struct EigenPair {
  double lambda;
  Eigen::VectorXd v;
};

// Dominant eigenpair of a real matrix whose leading eigenvalue is real,
// simple and positive. Deterministic all-ones start.
EigenPair power_iteration(const Eigen::MatrixXd& M) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(M.rows());
  v.normalize();
  double lambda = 0;
  int stable = 0;
  for (int it = 0; it < kPowerIterationCap; ++it) {
    Eigen::VectorXd w = M * v;
    double next = v.dot(w);
    double norm = w.norm();
    if (norm == 0) fail(errc::nonconverged_eigenvalue, "operator annihilated the iterate");
    v = w / norm;
    if (std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(next))) {
      if (++stable >= 3) {
        if (!(next > 0))
          fail(errc::nonconverged_eigenvalue,
               "leading eigenvalue not positive: " + std::to_string(next));
        return {next, v};
      }
    } else {
      stable = 0;
    }
    lambda = next;
  }
  fail(errc::nonconverged_eigenvalue, "power iteration exceeded iteration cap");
}

}  // namespace

double pressure_eig(const SchottkyGroup& g, double sigma, int K) {
  Eigen::MatrixXd M = real_operator_matrix(g, sigma, K);
  return std::log(power_iteration(M).lambda);
}

double pressure_derivative(const SchottkyGroup& g, double sigma, int K) {
  bergman::DiscCover cover = bergman::coarse_cover(g);
  auto [op, dmat] = bergman::build_operator_with_derivative(g, cover, complex{sigma, 0}, K);
  Eigen::MatrixXd M = op.matrix.real();
  Eigen::MatrixXd dM = dmat.real();
  EigenPair right = power_iteration(M);
  EigenPair left = power_iteration(Eigen::MatrixXd(M.transpose()));
  double denom = left.v.dot(right.v);
  if (std::abs(denom) <= 1e-12)
    fail(errc::degenerate_eigenpair, "left/right eigenvectors nearly orthogonal");
  double dlambda = left.v.dot(dM * right.v) / denom;
  return dlambda / right.lambda;
}

DimensionResult hausdorff_dimension(const SchottkyGroup& g, double tol, int K) {
  if (!(tol > 0)) fail(errc::config_invalid, "tol must be positive");
  DimensionResult res;
  res.K = K;
  double f0 = pressure_eig(g, 0.0, K);
  if (f0 <= tol) {
    // Two-point limit set: P(0) = 0 already.
    res.delta = 0;
    res.residual = std::abs(f0);
    res.bracket_lo = res.bracket_hi = 0;
    return res;
  }
  double lo = 0, hi = 1;
  double flo = f0, fhi = pressure_eig(g, 1.0, K);
  if (fhi >= 0)
    fail(errc::no_sign_change, "pressure does not change sign on [0, 1]");
  double mid = 0.5, fmid = 0;
  for (int it = 0; it < 200; ++it) {
    // Secant proposal, clamped into the bracket interior; fall back to bisection.
    double sec = lo - flo * (hi - lo) / (fhi - flo);
    double width = hi - lo;
    mid = (sec > lo + 1e-3 * width && sec < hi - 1e-3 * width) ? sec : 0.5 * (lo + hi);
    fmid = pressure_eig(g, mid, K);
    if (fmid > 0) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
    if (std::abs(fmid) <= tol) break;
  }
  if (std::abs(fmid) > tol)
    fail(errc::nonconverged_eigenvalue, "dimension root finder did not reach tolerance");
  res.delta = mid;
  res.residual = std::abs(fmid);
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  return res;
}

std::vector<PressureSample> pressure_curve(const SchottkyGroup& g,
                                           const std::vector<double>& sigmas, int K,
                                           int n_orbit) {
  std::vector<PressureSample> out;
  out.reserve(sigmas.size());
  for (double s : sigmas)
    out.push_back({s, pressure_eig(g, s, K), pressure_orbit(g, s, n_orbit)});
  return out;
}

}  // namespace selzeta::dyn
