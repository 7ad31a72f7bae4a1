#include "selzeta/resonances.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "selzeta/parallel.hpp"
#include "selzeta/pressure.hpp"
#include "selzeta/words.hpp"

namespace selzeta::scan {

namespace {

using bergman::DiscCover;

/// Z and Z'/Z at fixed cover and degree: Z = det(I - M(s)) and
/// Z'/Z = -tr((I - M)^{-1} M') by the derivative of the log determinant.
class ZetaLogDeriv {
 public:
  ZetaLogDeriv(const SchottkyGroup& g, DiscCover cover, int K, int quad_factor)
      : g_(g), cover_(std::move(cover)), K_(K), quad_factor_(quad_factor) {}

  struct Eval {
    complex z_log_deriv;
    double log_abs;
    complex value;
  };

  Eval operator()(complex s) const {
    auto [op, dmat] =
        bergman::build_operator_with_derivative(g_, cover_, s, K_, 1, quad_factor_, 1);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(op.dim(), op.dim()) - op.matrix;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eval e;
    e.z_log_deriv = -lu.solve(dmat).trace();
    double log_abs = 0.0;
    double arg = lu.permutationP().determinant() < 0 ? M_PI : 0.0;
    for (int i = 0; i < A.rows(); ++i) {
      complex u = lu.matrixLU()(i, i);
      log_abs += std::log(std::abs(u));
      arg += std::arg(u);
    }
    e.log_abs = log_abs;
    e.value = std::exp(complex{log_abs, 0}) * complex{std::cos(arg), std::sin(arg)};
    return e;
  }

  const SchottkyGroup& group() const { return g_; }

 private:
  const SchottkyGroup& g_;
  DiscCover cover_;
  int K_;
  int quad_factor_;
};

// 10-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNode[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                               0.8650633666889845, 0.9739065285171717};
constexpr double kGlWeight[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                 0.1494513491505806, 0.0666713443086881};

struct EdgeIntegrator {
  const ZetaLogDeriv& f;
  complex origin;     // edge start point
  complex direction;  // unit ds per unit parameter
  int evals = 0;

  complex gl10(double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    complex acc = 0;
    for (int i = 0; i < 5; ++i) {
      for (double sgn : {-1.0, 1.0}) {
        double x = mid + sgn * half * kGlNode[i];
        complex s = origin + direction * x;
        acc += kGlWeight[i] * f(s).z_log_deriv;
        ++evals;
      }
    }
    return acc * half * direction;
  }

  // Adaptive bisection with an absolute tolerance on the winding contribution.
  complex adaptive(double a, double b, complex whole, double tol, int depth, bool& clean) {
    double m = 0.5 * (a + b);
    complex left = gl10(a, m), right = gl10(m, b);
    if (std::abs(left + right - whole) <= tol || depth > 24) {
      if (depth > 24) clean = false;
      return left + right;
    }
    return adaptive(a, m, left, tol / 2, depth + 1, clean) +
           adaptive(m, b, right, tol / 2, depth + 1, clean);
  }

  complex integrate(double length, double tol, bool& clean) {
    int panels = std::max(1, static_cast<int>(std::ceil(length / 0.5)));
    complex acc = 0;
    for (int i = 0; i < panels; ++i) {
      double a = length * i / panels, b = length * (i + 1) / panels;
      acc += adaptive(a, b, gl10(a, b), tol / panels, 0, clean);
    }
    return acc;
  }
};

struct WindingResult {
  int count = 0;
  bool ok = false;
};

// One counterclockwise winding integral; ok = false when the quadrature hit
// the depth cap or the result is not close to a nonnegative integer.
WindingResult winding_number(const ZetaLogDeriv& f, const Box& box, int threads) {
  if (box.width() <= 0 || box.height() <= 0) return {0, true};
  struct EdgeSpec {
    complex origin, direction;
    double length;
  };
  const EdgeSpec edges[4] = {
      {{box.re_lo, box.im_lo}, {1, 0}, box.width()},
      {{box.re_hi, box.im_lo}, {0, 1}, box.height()},
      {{box.re_hi, box.im_hi}, {-1, 0}, box.width()},
      {{box.re_lo, box.im_hi}, {0, -1}, box.height()},
  };
  complex totals[4];
  bool cleans[4] = {true, true, true, true};
  parallel_for(4, threads, [&](int i) {
    EdgeIntegrator integ{f, edges[i].origin, edges[i].direction};
    totals[i] = integ.integrate(edges[i].length, 2e-3, cleans[i]);
  });
  complex total = totals[0] + totals[1] + totals[2] + totals[3];
  bool clean = cleans[0] && cleans[1] && cleans[2] && cleans[3];
  double w = total.imag() / (2 * M_PI);  // winding = (1/2 pi i) * total
  double re_leak = total.real() / (2 * M_PI);
  int rounded = static_cast<int>(std::lround(w));
  if (!clean || rounded < 0 || std::abs(w - rounded) > 0.05 || std::abs(re_leak) > 0.05)
    return {rounded, false};
  return {rounded, true};
}

ZetaLogDeriv make_evaluator(const SchottkyGroup& g, const Box& box, const ScanOptions& opts) {
  double im_scale = std::max(std::abs(box.im_lo), std::abs(box.im_hi));
  zeta::CoverChoice cc = zeta::pick_cover(g, im_scale, opts.zeta_options());
  return ZetaLogDeriv(g, std::move(cc.cover), cc.K, opts.quad_factor);
}

constexpr double kEdgePerturb[3] = {1e-2, 2e-2, 4e-2};

// Count over the box, pushing every edge outward on failure. Returns the
// perturbed box actually used.
std::pair<int, Box> robust_count(const SchottkyGroup& g, const Box& box,
                                 const ScanOptions& opts) {
  ZetaLogDeriv f = make_evaluator(g, box, opts);
  WindingResult w = winding_number(f, box, opts.threads);
  if (w.ok) return {w.count, box};
  for (double d : kEdgePerturb) {
    Box b{box.re_lo - d, box.re_hi + d, box.im_lo - d, box.im_hi + d};
    w = winding_number(f, b, opts.threads);
    if (w.ok) return {w.count, b};
  }
  fail(errc::contour_too_close_to_zero,
       "winding integral unstable after outward perturbations");
}

struct Collector {
  std::vector<Resonance> zeros;
  std::vector<UnresolvedRegion> unresolved;
};

// Multiplicity-aware Newton from the cell center: s <- s + m / (Z'/Z)^{-1}...
// i.e. s_{k+1} = s_k - m / (Z'/Z)(s_k), quadratic near an m-fold zero.
void newton_resolve(const ZetaLogDeriv& f, const Box& cell, int count, const std::string& id,
                    const ScanOptions& opts, int threads, Collector& out) {
  complex s{0.5 * (cell.re_lo + cell.re_hi), 0.5 * (cell.im_lo + cell.im_hi)};
  double reach = 4 * std::max(cell.width(), cell.height());
  complex start = s;
  bool converged = false;
  for (int it = 0; it < 60; ++it) {
    ZetaLogDeriv::Eval e = f(s);
    if (std::abs(e.z_log_deriv) < 1e-14) break;  // stationary point, not a zero
    complex step = -static_cast<double>(count) / e.z_log_deriv;
    s += step;
    if (std::abs(s - start) > reach) break;  // left the neighborhood
    if (std::abs(step) <= 1e-13 * (1 + std::abs(s))) {
      converged = true;
      break;
    }
  }
  if (converged) {
    // Certify multiplicity with a winding count on a small square around s.
    for (double eps : {1e-4, 2e-4, 4e-4}) {
      Box sq{s.real() - eps, s.real() + eps, s.imag() - eps, s.imag() + eps};
      WindingResult w = winding_number(f, sq, threads);
      if (!w.ok) continue;
      if (w.count != count) break;  // cluster, not a single zero
      double corner_scale = -1e300;
      for (complex c : {complex{sq.re_lo, sq.im_lo}, complex{sq.re_hi, sq.im_lo},
                        complex{sq.re_lo, sq.im_hi}, complex{sq.re_hi, sq.im_hi}})
        corner_scale = std::max(corner_scale, f(c).log_abs);
      double residual = std::exp(f(s).log_abs - corner_scale);
      if (residual <= opts.tol) {
        out.zeros.push_back({s, count, residual, id});
        return;
      }
      break;
    }
  }
  out.unresolved.push_back({cell, count, id});
}

constexpr double kSplitFractions[5] = {0.5, 0.55, 0.45, 0.6, 0.4};

void subdivide(const ZetaLogDeriv& f, const Box& cell, int count, const std::string& id,
               const ScanOptions& opts, int depth, Collector& out) {
  if (count == 0) return;
  if (std::max(cell.width(), cell.height()) <= opts.resolve_size || depth >= opts.max_depth) {
    newton_resolve(f, cell, count, id, opts, opts.threads, out);
    return;
  }
  for (double frac : kSplitFractions) {
    double xm = cell.re_lo + frac * cell.width();
    double ym = cell.im_lo + frac * cell.height();
    Box quads[4] = {
        {cell.re_lo, xm, cell.im_lo, ym},
        {xm, cell.re_hi, cell.im_lo, ym},
        {cell.re_lo, xm, ym, cell.im_hi},
        {xm, cell.re_hi, ym, cell.im_hi},
    };
    int counts[4];
    bool ok[4];
    parallel_for(4, opts.threads, [&](int i) {
      WindingResult w = winding_number(f, quads[i], 1);
      counts[i] = w.count;
      ok[i] = w.ok;
    });
    if (!(ok[0] && ok[1] && ok[2] && ok[3])) continue;
    if (counts[0] + counts[1] + counts[2] + counts[3] != count) continue;
    for (int i = 0; i < 4; ++i)
      subdivide(f, quads[i], counts[i], id + "." + std::to_string(i), opts, depth + 1, out);
    return;
  }
  // Every split line landed near a zero; resolve the cell as a whole.
  newton_resolve(f, cell, count, id, opts, opts.threads, out);
}

}  // namespace

int count_zeros_box(const SchottkyGroup& g, const Box& box, const ScanOptions& opts) {
  if (box.width() <= 0 || box.height() <= 0) return 0;
  return robust_count(g, box, opts).first;
}

ScanResult locate_zeros(const SchottkyGroup& g, const Box& box, const ScanOptions& opts) {
  ScanResult result;
  if (box.width() <= 0 || box.height() <= 0) {
    result.box_used = box;
    return result;
  }
  auto [count, used] = robust_count(g, box, opts);
  result.box_used = used;
  result.total_count = count;
  ZetaLogDeriv f = make_evaluator(g, used, opts);
  Collector col;
  subdivide(f, used, count, "0", opts, 0, col);
  result.zeros = std::move(col.zeros);
  result.unresolved = std::move(col.unresolved);
  std::stable_sort(result.zeros.begin(), result.zeros.end(),
                   [](const Resonance& a, const Resonance& b) {
                     if (a.s.imag() != b.s.imag()) return a.s.imag() < b.s.imag();
                     return a.s.real() < b.s.real();
                   });
  return result;
}

std::vector<StripCount> strip_counts(const SchottkyGroup& g, const std::vector<double>& sigmas,
                                     const std::vector<double>& Ts, double delta,
                                     const ScanOptions& opts) {
  if (sigmas.empty() || Ts.empty()) fail(errc::config_invalid, "empty sigma or T list");
  double sig_min = *std::min_element(sigmas.begin(), sigmas.end());
  double t_max = *std::max_element(Ts.begin(), Ts.end());
  Box region{sig_min, delta + 0.02, -0.02, t_max};
  ScanResult scanres = locate_zeros(g, region, opts);

  auto zero_count = [&](double re_min, double im_min, double im_max) {
    int n = 0;
    for (const Resonance& r : scanres.zeros) {
      double re = r.s.real(), im = r.s.imag();
      if (re >= re_min - 1e-9 && im >= im_min - 1e-6 && im <= im_max + 1e-12)
        n += r.multiplicity;
    }
    return n;
  };
  auto unresolved_count = [&](double re_min, double im_min, double im_max) {
    int n = 0;
    for (const UnresolvedRegion& u : scanres.unresolved) {
      bool overlap = u.box.re_hi >= re_min - 1e-9 && u.box.im_hi >= im_min - 1e-6 &&
                     u.box.im_lo <= im_max + 1e-12;
      if (overlap) n += u.count;
    }
    return n;
  };

  std::vector<StripCount> out;
  for (double sig : sigmas) {
    for (double T : Ts) {
      StripCount sc;
      sc.sigma = sig;
      sc.T = T;
      sc.N_lo = zero_count(sig, 0.0, T);
      sc.N_hi = sc.N_lo + unresolved_count(sig, 0.0, T);
      sc.M_lo = zero_count(sig, T / 2, T);
      sc.M_hi = sc.M_lo + unresolved_count(sig, T / 2, T);
      sc.N = sc.N_lo;
      sc.M = sc.M_lo;
      out.push_back(sc);
    }
  }
  return out;
}

std::vector<WeylFitRow> weyl_fit(const std::vector<StripCount>& counts, double delta) {
  std::vector<double> sigmas;
  for (const StripCount& c : counts)
    if (std::find(sigmas.begin(), sigmas.end(), c.sigma) == sigmas.end())
      sigmas.push_back(c.sigma);

  std::vector<WeylFitRow> out;
  for (double sig : sigmas) {
    std::vector<std::pair<double, double>> pts;  // (log T, log N)
    for (const StripCount& c : counts)
      if (c.sigma == sig && c.N > 0 && c.T > 0) {
        bool dup = false;
        for (auto& p : pts) dup = dup || p.first == std::log(c.T);
        if (!dup) pts.emplace_back(std::log(c.T), std::log(static_cast<double>(c.N)));
      }
    if (pts.size() < 4) continue;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double n = static_cast<double>(pts.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - slope * sx) / n;
    double rss = 0;
    for (auto& [x, y] : pts) {
      double e = y - slope * x - intercept;
      rss += e * e;
    }
    WeylFitRow row;
    row.sigma = sig;
    row.exponent = slope;
    row.residual = std::sqrt(rss / n);
    row.points_used = static_cast<int>(pts.size());
    row.flagged = slope > 1 + delta + 0.1;
    out.push_back(row);
  }
  if (out.empty())
    fail(errc::insufficient_data, "no sigma row has >= 4 positive counts");
  return out;
}

TauCurve tau_curve(const SchottkyGroup& g, std::optional<double> nu_override,
                   const std::vector<double>& sigma_grid, int K) {
  dyn::DimensionResult dim = dyn::hausdorff_dimension(g, 1e-10, K);
  double delta = dim.delta;
  if (!(delta > 0))
    fail(errc::nu_out_of_range, "tau curve needs a nonelementary group (delta > 0)");
  geo::DistortionReport rep = geo::distortion_report(g, 6);
  double theta_bar = rep.theta_low;

  // Anchor the pressure at the computed root so that P(delta) = 0 exactly and
  // tau(delta/2) = delta holds without the root-finder residual leaking in.
  double anchor = dyn::pressure_eig(g, delta, K);
  auto P = [&](double x) { return dyn::pressure_eig(g, x, K) - anchor; };

  double p_half = P(delta / 2);
  if (!(p_half > 0)) fail(errc::nu_out_of_range, "pressure at delta/2 must be positive");
  double nu_max = std::min({delta / (8 * std::abs(std::log(theta_bar))),
                            delta / (16 * p_half), (1 - delta) / p_half});
  double nu = nu_override.value_or(nu_max);
  if (!(nu > 0) || nu > nu_max * (1 + 1e-12))
    fail(errc::nu_out_of_range,
         "nu must lie in (0, " + std::to_string(nu_max) + "]");

  TauCurve curve;
  curve.nu = nu;
  curve.delta = delta;
  curve.theta_bar = theta_bar;
  curve.p_half = p_half;
  for (double sig : sigma_grid) {
    if (sig < delta / 2 - 1e-9 || sig > delta + 1e-9)
      fail(errc::config_invalid, "tau grid point outside [delta/2, delta]");
    double tau = std::max(delta + 0.5 * nu * P(sig + delta / 2), 7 * delta / 8);
    curve.samples.emplace_back(sig, tau);
  }
  curve.tau_prime_at_half = 0.5 * nu * dyn::pressure_derivative(g, delta, K);
  return curve;
}

}  // namespace selzeta::scan
