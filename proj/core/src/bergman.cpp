#include "selzeta/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "selzeta/orbits.hpp"
#include "selzeta/parallel.hpp"

namespace selzeta::bergman {

using geo::Interval;
using geo::Mobius;
using geo::Word;

DiscCover coarse_cover(const SchottkyGroup& g) {
  DiscCover c;
  c.discs = g.discs;
  c.parent.resize(g.letters());
  for (int j = 0; j < g.letters(); ++j) c.parent[j] = j;
  c.refined = false;
  double md = 0;
  for (const Disc& d : c.discs) md = std::max(md, 2 * d.radius);
  c.max_diam = md;
  return c;
}

namespace {

// Word intervals gamma_{b0..b_{n-2}}(I_{inv(b_{n-1})}) refined until each has
// length <= target_len. Depth-first with explicit stack; collected intervals
// are sorted afterwards, so traversal order does not matter.
std::vector<Interval> word_interval_leaves(const SchottkyGroup& g, double target_len,
                                           int depth_cap) {
  struct Node {
    Mobius prefix;
    int last;
    int depth;
  };
  const int L = g.letters();
  std::vector<Interval> out;
  std::vector<Node> stack;
  for (int b = 0; b < L; ++b) stack.push_back({Mobius::identity(), b, 1});
  while (!stack.empty()) {
    Node nd = stack.back();
    stack.pop_back();
    Interval iv = geo::map_interval(nd.prefix, g.interval(g.inverse_letter(nd.last)));
    if (iv.length() <= target_len) {
      out.push_back(iv);
      continue;
    }
    if (nd.depth >= depth_cap)
      fail(errc::refinement_budget_exceeded,
           "word depth " + std::to_string(depth_cap) + " reached at interval length " +
               std::to_string(iv.length()));
    Mobius next = nd.prefix * g.gens[nd.last];
    int forbidden = g.inverse_letter(nd.last);
    for (int b = 0; b < L; ++b)
      if (b != forbidden) stack.push_back({next, b, nd.depth + 1});
  }
  return out;
}

}  // namespace

DiscCover refined_cover(const SchottkyGroup& g, double h, int depth_cap) {
  if (!(h > 0) || h >= g.min_radius())
    fail(errc::config_invalid, "h must satisfy 0 < h < min disc radius");
  std::vector<Interval> leaves = word_interval_leaves(g, h / 4, depth_cap);
  std::vector<Interval> inflated;
  inflated.reserve(leaves.size());
  for (const Interval& iv : leaves) inflated.push_back({iv.lo - h, iv.hi + h});
  std::sort(inflated.begin(), inflated.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });

  DiscCover c;
  c.refined = true;
  c.h = h;
  c.leaf_count = static_cast<int>(leaves.size());
  Interval cur = inflated.front();
  auto flush = [&](const Interval& iv) {
    c.discs.push_back({iv.mid(), iv.length() / 2});
    c.max_diam = std::max(c.max_diam, iv.length());
  };
  for (size_t i = 1; i < inflated.size(); ++i) {
    if (inflated[i].lo <= cur.hi) {
      cur.hi = std::max(cur.hi, inflated[i].hi);
    } else {
      flush(cur);
      cur = inflated[i];
    }
  }
  flush(cur);

  c.parent.resize(c.discs.size());
  for (size_t i = 0; i < c.discs.size(); ++i) {
    Interval iv = geo::disc_interval(c.discs[i]);
    int pj = -1;
    for (int j = 0; j < g.letters(); ++j) {
      Interval ij = g.interval(j);
      if (ij.lo <= iv.lo && iv.hi <= ij.hi) {
        pj = j;
        break;
      }
    }
    if (pj < 0)
      fail(errc::refinement_budget_exceeded,
           "component not contained in a generator interval; h too large");
    c.parent[i] = pj;
  }
  return c;
}

namespace {

struct TargetHit {
  int disc = -1;
  double margin = 0;  // dist(image disc, target boundary), negative if not inside
};

// Cover disc best containing the image disc (max containment margin).
TargetHit locate_target(const DiscCover& cover, double c_img, double r_img) {
  TargetHit best;
  best.margin = -1e300;
  for (int t = 0; t < cover.size(); ++t) {
    double margin = cover.discs[t].radius -
                    (std::abs(c_img - cover.discs[t].center) + r_img);
    if (margin > best.margin) {
      best.margin = margin;
      best.disc = t;
    }
  }
  return best;
}

}  // namespace

double check_separation(const SchottkyGroup& g, const DiscCover& cover, int n) {
  double scale = cover.refined ? cover.h : g.min_radius();
  double min_margin = 1e300;
  for (int l = 0; l < cover.size(); ++l) {
    Interval src = geo::disc_interval(cover.discs[l]);
    geo::for_each_word(g, n, cover.parent[l], [&](const Word&, const Mobius& m) {
      Interval img = geo::map_interval(m, src);
      TargetHit hit = locate_target(cover, img.mid(), img.length() / 2);
      if (hit.margin <= 0)
        fail(errc::image_escapes_cover,
             "word image not contained in any cover disc at n = " + std::to_string(n));
      min_margin = std::min(min_margin, hit.margin);
    });
  }
  return min_margin / scale;
}

namespace {

struct AssemblyTables {
  int K, M;
  std::vector<complex> twiddle;  // [kp*M + m] = exp(-2 pi i kp m / M) / M
  std::vector<double> col_norm;  // sqrt((k+1)/pi)
  std::vector<double> row_norm;  // sqrt(pi/(kp+1))

  AssemblyTables(int K_, int M_) : K(K_), M(M_) {
    twiddle.resize(static_cast<size_t>(K) * M);
    for (int kp = 0; kp < K; ++kp)
      for (int m = 0; m < M; ++m) {
        double th = -2 * M_PI * static_cast<double>(kp) * m / M;
        twiddle[static_cast<size_t>(kp) * M + m] =
            complex{std::cos(th), std::sin(th)} / static_cast<double>(M);
      }
    col_norm.resize(K);
    row_norm.resize(K);
    for (int k = 0; k < K; ++k) {
      col_norm[k] = std::sqrt((k + 1) / M_PI);
      row_norm[k] = std::sqrt(M_PI / (k + 1));
    }
  }
};

// Accumulated boundary samples of the operator image of every basis element
// of one target block, for one row disc: buf(k, m) over column degree k and
// sample index m.
using SampleBuffer = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic>;

void assemble_row_block(const SchottkyGroup& g, const DiscCover& cover, complex s, int n_op,
                        const AssemblyTables& tab, bool with_deriv, int row,
                        Eigen::MatrixXcd& A, Eigen::MatrixXcd* dA) {
  const int K = tab.K, M = tab.M;
  const Disc rd = cover.discs[row];
  std::vector<complex> zs(M);
  for (int m = 0; m < M; ++m) {
    double th = 2 * M_PI * m / M;
    zs[m] = complex{rd.center + rd.radius * std::cos(th), rd.radius * std::sin(th)};
  }
  Interval src = geo::disc_interval(rd);

  std::map<int, SampleBuffer> bufs, dbufs;
  std::vector<complex> weight(M), dlog(M), img(M), u(M), upow(M);

  geo::for_each_word(g, n_op, cover.parent[row], [&](const Word& w, const Mobius& mw) {
    Interval iv = geo::map_interval(mw, src);
    TargetHit hit = locate_target(cover, iv.mid(), iv.length() / 2);
    if (hit.margin <= 0)
      fail(errc::separation_not_certified,
           "image disc not strictly interior; certify n_op with check_separation");
    const Disc td = cover.discs[hit.disc];

    for (int m = 0; m < M; ++m) {
      complex bl = geo::branch_log_derivative(g, w, zs[m]);
      weight[m] = std::exp(s * bl);
      if (with_deriv) dlog[m] = bl;
      img[m] = mw.apply(zs[m]);
      u[m] = (img[m] - td.center) / td.radius;
      upow[m] = 1.0;
    }
    SampleBuffer& buf = bufs.try_emplace(hit.disc, SampleBuffer::Zero(K, M)).first->second;
    SampleBuffer* dbuf = nullptr;
    if (with_deriv)
      dbuf = &dbufs.try_emplace(hit.disc, SampleBuffer::Zero(K, M)).first->second;
    for (int k = 0; k < K; ++k) {
      double norm = tab.col_norm[k] / td.radius;
      for (int m = 0; m < M; ++m) {
        complex v = weight[m] * norm * upow[m];
        buf(k, m) += v;
        if (with_deriv) (*dbuf)(k, m) += dlog[m] * v;
        upow[m] *= u[m];
      }
    }
  });

  // Project each accumulated block on the row basis: Taylor coefficient kp of
  // the samples, rescaled by the basis normalization of the row disc.
  auto project = [&](const std::map<int, SampleBuffer>& from, Eigen::MatrixXcd& into) {
    for (const auto& [target, buf] : from) {
      for (int k = 0; k < K; ++k) {
        for (int kp = 0; kp < K; ++kp) {
          const complex* tw = &tab.twiddle[static_cast<size_t>(kp) * M];
          complex acc = 0;
          for (int m = 0; m < M; ++m) acc += buf(k, m) * tw[m];
          into(row * K + kp, target * K + k) = acc * rd.radius * tab.row_norm[kp];
        }
      }
    }
  };
  project(bufs, A);
  if (with_deriv) project(dbufs, *dA);
}

}  // namespace

DiscretizedTransferOperator build_operator(const SchottkyGroup& g, const DiscCover& cover,
                                           complex s, int K, int n_op, int quad_factor,
                                           int threads) {
  if (K < 2) fail(errc::config_invalid, "K must be >= 2");
  AssemblyTables tab(K, quad_factor * K);
  DiscretizedTransferOperator op;
  op.s = s;
  op.K = K;
  op.n_op = n_op;
  op.cover = cover;
  op.matrix = Eigen::MatrixXcd::Zero(cover.size() * K, cover.size() * K);
  parallel_for(cover.size(), threads, [&](int row) {
    assemble_row_block(g, cover, s, n_op, tab, false, row, op.matrix, nullptr);
  });
  return op;
}

std::pair<DiscretizedTransferOperator, Eigen::MatrixXcd> build_operator_with_derivative(
    const SchottkyGroup& g, const DiscCover& cover, complex s, int K, int n_op,
    int quad_factor, int threads) {
  if (K < 2) fail(errc::config_invalid, "K must be >= 2");
  AssemblyTables tab(K, quad_factor * K);
  DiscretizedTransferOperator op;
  op.s = s;
  op.K = K;
  op.n_op = n_op;
  op.cover = cover;
  op.matrix = Eigen::MatrixXcd::Zero(cover.size() * K, cover.size() * K);
  Eigen::MatrixXcd dmat = Eigen::MatrixXcd::Zero(cover.size() * K, cover.size() * K);
  parallel_for(cover.size(), threads, [&](int row) {
    assemble_row_block(g, cover, s, n_op, tab, true, row, op.matrix, &dmat);
  });
  return {std::move(op), std::move(dmat)};
}

complex operator_trace(const DiscretizedTransferOperator& op) { return op.matrix.trace(); }

complex trace_oracle(const SchottkyGroup& g, complex s, int q) {
  return dyn::periodic_point_sum(g, s, q);
}

}  // namespace selzeta::bergman
