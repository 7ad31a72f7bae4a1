#pragma once

#include <Eigen/Dense>

#include "selzeta/words.hpp"

namespace selzeta::bergman {

using geo::complex;
using geo::Disc;
using geo::SchottkyGroup;

/// Family of discs orthogonal to the real axis carrying one Bergman space
/// each. Either the 2p generator discs, or the components of an
/// h-neighborhood of the limit set ("refined" cover).
struct DiscCover {
  std::vector<Disc> discs;
  std::vector<int> parent;   // index of the generator interval containing each disc
  bool refined = false;
  double h = 0;              // inflation scale (refined covers only)
  double max_diam = 0;       // largest component diameter
  int leaf_count = 0;        // word intervals used in the construction

  int size() const { return static_cast<int>(discs.size()); }
};

/// The 2p generator discs.
DiscCover coarse_cover(const SchottkyGroup& g);

/// Approximates the limit set by word intervals refined until each has length
/// <= h/4, inflates every interval by h, and merges overlaps into connected
/// components; the cover discs have those components as real diameters.
/// Throws RefinementBudgetExceeded if the word depth cap is hit.
DiscCover refined_cover(const SchottkyGroup& g, double h, int depth_cap = 60);

/// Certifies that the weighted composition operator of word length n maps the
/// cover into itself: over all cover discs D and words w of length n
/// admissible from D's parent interval, the image disc w(D) must sit inside
/// some cover disc. Returns min dist(w(D), boundary)/h over all pairs
/// (positive = certified); throws ImageEscapesCover when an image fits in no
/// disc of the cover.
double check_separation(const SchottkyGroup& g, const DiscCover& cover, int n);

/// Dense matrix of the weighted composition operator
///   (L_s f)(z) = sum_w gamma_w'(z)^s f(gamma_w(z)),  words w of length n_op,
/// acting on the product of Bergman spaces over the cover discs, in the
/// orthonormal monomial basis e_k(z) = sqrt((k+1)/pi)/r * ((z-c)/r)^k
/// truncated at degree K per disc. Block (disc, degree) index: disc*K + k.
struct DiscretizedTransferOperator {
  complex s;
  int K = 0;
  int n_op = 1;
  DiscCover cover;
  Eigen::MatrixXcd matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
  int block(int disc, int k) const { return disc * K + k; }
};

/// Matrix entries by boundary-circle sampling: each basis image is evaluated
/// at M = quad_factor*K equispaced points per target circle and projected on
/// the monomial basis by a discrete Fourier transform. Images are strictly
/// interior discs, so the sampled functions are analytic past the boundary
/// and the coefficients converge geometrically in K.
/// Throws SeparationNotCertified when some word image is not strictly inside
/// a cover disc (refined covers need n_op certified by check_separation).
DiscretizedTransferOperator build_operator(const SchottkyGroup& g, const DiscCover& cover,
                                           complex s, int K, int n_op = 1,
                                           int quad_factor = 4, int threads = 1);

/// Same assembly, also returning d/ds of the matrix (each term picks up the
/// branch log of gamma_w' as a factor).
std::pair<DiscretizedTransferOperator, Eigen::MatrixXcd> build_operator_with_derivative(
    const SchottkyGroup& g, const DiscCover& cover, complex s, int K, int n_op = 1,
    int quad_factor = 4, int threads = 1);

/// Matrix trace of the discretized operator.
complex operator_trace(const DiscretizedTransferOperator& op);

/// Exact trace of L_s^q from periodic-point data:
///   sum over T^q-periodic points of Lambda^{-s} / (1 - Lambda^{-1}).
/// Independent of any discretization; the primary correctness oracle for the
/// matrix route.
complex trace_oracle(const SchottkyGroup& g, complex s, int q);

}  // namespace selzeta::bergman
