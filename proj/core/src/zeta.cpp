#include "selzeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <Eigen/LU>

#include "selzeta/orbits.hpp"
#include "selzeta/parallel.hpp"

namespace selzeta::zeta {

using geo::Mobius;
using geo::Word;

LogDet logdet_I_minus(const Eigen::MatrixXcd& M) {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(M.rows(), M.cols()) - M;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  LogDet out;
  double sign_arg = lu.permutationP().determinant() < 0 ? M_PI : 0.0;
  out.arg = sign_arg;
  for (int i = 0; i < A.rows(); ++i) {
    complex u = lu.matrixLU()(i, i);
    out.log_abs += std::log(std::abs(u));
    out.arg += std::arg(u);
  }
  out.value = std::exp(complex{out.log_abs, 0}) * complex{std::cos(out.arg), std::sin(out.arg)};
  return out;
}

CoverChoice pick_cover(const SchottkyGroup& g, double im_scale, const ZetaOptions& opts) {
  if (im_scale > opts.refined_threshold) {
    double h = 1.0 / im_scale;
    h = std::max(opts.h_min, std::min(h, g.min_radius() / 4));
    bergman::DiscCover cover = bergman::refined_cover(g, h);
    bool certified = true;
    try {
      certified = bergman::check_separation(g, cover, 1) > 0;
    } catch (const Error&) {
      certified = false;
    }
    if (certified) return {std::move(cover), opts.refined_K};
    // Fall back to the generator discs with the degree scaled for oscillation.
  }
  int K = opts.K;
  if (im_scale > opts.refined_threshold)
    K = std::max(opts.K, static_cast<int>(std::ceil(2 * im_scale)));
  return {bergman::coarse_cover(g), K};
}

ZetaValue zeta_det(const SchottkyGroup& g, complex s, const ZetaOptions& opts) {
  CoverChoice cc = pick_cover(g, std::abs(s.imag()), opts);
  auto op = bergman::build_operator(g, cc.cover, s, cc.K, 1, opts.quad_factor, opts.threads);
  LogDet ld = logdet_I_minus(op.matrix);
  ZetaValue v;
  v.s = s;
  v.value = ld.value;
  v.log_abs = ld.log_abs;
  v.method = "det";
  v.cover = cc.cover.refined ? "refined" : "coarse";
  v.K = cc.K;
  v.h = cc.cover.h;
  return v;
}

ZetaValue zeta_det_power(const SchottkyGroup& g, complex s, int n, const ZetaOptions& opts) {
  if (n < 1) fail(errc::config_invalid, "operator power must be >= 1");
  CoverChoice cc = pick_cover(g, std::abs(s.imag()), opts);
  auto op = bergman::build_operator(g, cc.cover, s, cc.K, 1, opts.quad_factor, opts.threads);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(op.dim(), op.dim());
  Eigen::MatrixXcd base = op.matrix;
  int e = n;
  while (e > 0) {  // binary exponentiation
    if (e & 1) P = P * base;
    e >>= 1;
    if (e) base = base * base;
  }
  LogDet ld = logdet_I_minus(P);
  ZetaValue v;
  v.s = s;
  v.value = ld.value;
  v.log_abs = ld.log_abs;
  v.method = "det_power";
  v.cover = cc.cover.refined ? "refined" : "coarse";
  v.K = cc.K;
  v.n = n;
  v.h = cc.cover.h;
  return v;
}

ZetaValue zeta_trace_exp(const SchottkyGroup& g, complex s, int q_max) {
  if (q_max < 1) fail(errc::config_invalid, "q_max must be >= 1");
  complex acc = 0;
  double prev_term = 0, last_term = 0;
  for (int q = 1; q <= q_max; ++q) {
    complex t = bergman::trace_oracle(g, s, q) / static_cast<double>(q);
    acc += t;
    prev_term = last_term;
    last_term = std::abs(t);
  }
  ZetaValue v;
  v.s = s;
  v.value = std::exp(-acc);
  v.log_abs = -acc.real();
  v.method = "trace";
  v.cover = "none";
  v.q_max = q_max;
  v.tail_estimate = last_term;
  if (q_max >= 2 && last_term > prev_term && last_term > 1e-14)
    v.warning = "trace terms not decreasing; Re(s) may be inside the divergence region";
  return v;
}

ZetaValue zeta_euler(const SchottkyGroup& g, complex s, double len_cutoff, int max_word_len) {
  std::unordered_set<std::string> seen;
  complex log_prod = 0;
  double tail = 0;
  int used = 0;
  bool any_level_done = false;
  for (int n = 1; n <= max_word_len; ++n) {
    double level_min = 1e300;
    double level_tail = 0;
    for (const dyn::OrbitClass& oc : dyn::periodic_orbits(g, n)) {
      level_min = std::min(level_min, oc.length);
      if (!oc.primitive) continue;
      if (oc.length > len_cutoff) {
        level_tail += std::exp(-s.real() * oc.length);
        continue;
      }
      ++used;
      // Drop k once |e^{-(Re s + k) l}| < 1e-14.
      int k_max = static_cast<int>(std::ceil(14 * std::log(10.0) / oc.length - s.real()));
      for (int k = 0; k <= std::max(0, k_max); ++k)
        log_prod += std::log(1.0 - std::exp(-(s + static_cast<double>(k)) * oc.length));
    }
    tail = level_tail;
    if (level_min > len_cutoff) {
      any_level_done = true;
      break;
    }
  }
  if (used == 0)
    fail(errc::cutoff_too_small, "no primitive class below the length cutoff");
  if (!any_level_done)
    fail(errc::enumeration_budget_exceeded,
         "cutoff needs word length beyond " + std::to_string(max_word_len));
  ZetaValue v;
  v.s = s;
  v.value = std::exp(log_prod);
  v.log_abs = log_prod.real();
  v.method = "euler";
  v.cover = "none";
  v.cutoff = len_cutoff;
  v.tail_estimate = tail;
  return v;
}

ZetaGrid log_zeta_grid(const SchottkyGroup& g, const GridSpec& spec, const ZetaOptions& opts) {
  if (!(spec.dsig > 0) || !(spec.dt > 0))
    fail(errc::config_invalid, "grid spacings must be positive");
  ZetaGrid grid;
  for (double x = spec.sig_lo; x <= spec.sig_hi + 1e-12; x += spec.dsig) grid.sigmas.push_back(x);
  for (double t = spec.t_lo; t <= spec.t_hi + 1e-12; t += spec.dt) grid.ts.push_back(t);

  double im_scale = std::max(std::abs(spec.t_lo), std::abs(spec.t_hi));
  CoverChoice cc = pick_cover(g, im_scale, opts);
  grid.K = cc.K;
  grid.cover = cc.cover.refined ? "refined" : "coarse";

  size_t ns = grid.sigmas.size(), nt = grid.ts.size();
  grid.log_abs.assign(ns * nt, 0);
  grid.arg.assign(ns * nt, 0);
  std::vector<double> principal(ns * nt, 0);
  parallel_for(static_cast<int>(ns * nt), opts.threads, [&](int idx) {
    size_t it = idx / ns, is = idx % ns;
    complex s{grid.sigmas[is], grid.ts[it]};
    auto op = bergman::build_operator(g, cc.cover, s, cc.K, 1, opts.quad_factor, 1);
    LogDet ld = logdet_I_minus(op.matrix);
    grid.log_abs[idx] = ld.log_abs;
    principal[idx] = std::atan2(ld.value.imag(), ld.value.real());
  });

  // Unwrap the argument along each row, anchored at the right edge where the
  // determinant is closest to 1.
  for (size_t it = 0; it < nt; ++it) {
    double prev = principal[it * ns + (ns - 1)];
    grid.arg[it * ns + (ns - 1)] = prev;
    for (size_t is = ns - 1; is-- > 0;) {
      double a = principal[it * ns + is];
      double k = std::round((prev - a) / (2 * M_PI));
      double unwrapped = a + 2 * M_PI * k;
      grid.arg[it * ns + is] = unwrapped;
      prev = unwrapped;
    }
  }

  for (size_t it = 0; it < nt && !grid.resolution_warning; ++it)
    for (size_t is = 0; is + 1 < ns; ++is)
      if (std::abs(grid.at(it, is + 1) - grid.at(it, is)) >= 5) {
        grid.resolution_warning = true;
        break;
      }
  return grid;
}

}  // namespace selzeta::zeta
