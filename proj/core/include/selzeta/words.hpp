#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selzeta/schottky.hpp"

namespace selzeta::geo {

/// Reduced word in the generators, letters 0..2p-1 applied right-to-left:
/// gamma_w = gens[w[0]] o gens[w[1]] o ... o gens[w[n-1]].
/// Admissible: no letter followed by its inverse, w[i+1] != w[i] + p (mod 2p).
using Word = std::vector<int>;

bool is_admissible(const Word& w, int p);
/// Admissible and the wrap-around transition w[n-1] -> w[0] is allowed too
/// (w[0] != w[n-1] + p mod 2p): the word labels a periodic itinerary.
bool is_cyclically_admissible(const Word& w, int p);
/// Lexicographically minimal rotation: canonical representative of the
/// rotation class of a cyclic word.
Word canonical_rotation(const Word& w);
/// True when the word is not a power of a strictly shorter word.
bool is_primitive_word(const Word& w);
/// Letters rendered 1-based, dot separated ("1.4.2").
std::string word_to_string(const Word& w);

/// Exact count of admissible words of length n (last letter != excluded_last
/// when >= 0), by the transfer-matrix recursion on last-letter counts.
std::uint64_t count_words(int p, int n, int excluded_last = -1);

namespace detail {

/// Iterative lexicographic enumeration of admissible words of fixed length,
/// carrying prefix matrix products so each visit costs one multiplication.
template <class F>
void enumerate_words(const SchottkyGroup& g, int n, int excluded_last, F&& fn) {
  const int L = g.letters();
  const int p = g.p;
  if (n <= 0) return;
  Word w(n);
  std::vector<Mobius> prefix(n);  // prefix[k] = gens[w[0]] * ... * gens[w[k]]

  auto allowed = [&](int k, int letter) {
    if (k > 0 && letter == (w[k - 1] + p) % L) return false;
    if (k == n - 1 && letter == excluded_last) return false;
    return true;
  };
  auto set_letter = [&](int k, int letter) {
    w[k] = letter;
    prefix[k] = (k == 0) ? g.gens[letter] : prefix[k - 1] * g.gens[letter];
  };

  // Fill positions k..n-1 with the smallest allowed letters; false if stuck.
  auto descend = [&](int k) {
    for (; k < n; ++k) {
      int letter = 0;
      while (letter < L && !allowed(k, letter)) ++letter;
      if (letter == L) return false;
      set_letter(k, letter);
    }
    return true;
  };

  if (!descend(0)) return;
  for (;;) {
    fn(static_cast<const Word&>(w), static_cast<const Mobius&>(prefix[n - 1]));
    int k = n - 1;
    for (;;) {
      int letter = w[k] + 1;
      while (letter < L && !allowed(k, letter)) ++letter;
      if (letter < L) {
        set_letter(k, letter);
        if (k + 1 >= n || descend(k + 1)) break;
      }
      if (--k < 0) return;
    }
  }
}

}  // namespace detail

/// Visit all admissible words of length n (optionally with last letter
/// excluded) in lexicographic order; fn(word, composed_matrix).
template <class F>
void for_each_word(const SchottkyGroup& g, int n, int excluded_last, F&& fn) {
  detail::enumerate_words(g, n, excluded_last, std::forward<F>(fn));
}

/// All nonempty reduced words of length <= n_max, by increasing length.
template <class F>
void for_each_word_up_to(const SchottkyGroup& g, int n_max, F&& fn) {
  for (int n = 1; n <= n_max; ++n) detail::enumerate_words(g, n, -1, fn);
}

/// Cyclically admissible words of length n (all rotations visited).
template <class F>
void for_each_cyclic_word(const SchottkyGroup& g, int n, F&& fn) {
  const int L = g.letters();
  const int p = g.p;
  detail::enumerate_words(g, n, -1, [&](const Word& w, const Mobius& m) {
    if (n == 1 || w[0] != (w[n - 1] + p) % L) fn(w, m);
  });
}

/// Matrix product of the word's generators, identity for the empty word.
Mobius compose_word(const SchottkyGroup& g, const Word& w);

/// gamma_w'(z) by the chain rule over letter factors; equals
/// 1/(c z + d)^2 of the composed matrix. Throws PoleEncountered.
complex word_derivative(const SchottkyGroup& g, const Word& w, complex z);

/// Branch-consistent log of gamma_w'(z): the sum of principal logs of the
/// per-letter derivative factors. Each factor avoids the negative real axis
/// when z lies in an admissible source disc, so the sum is single-valued,
/// real on the real axis, and exp of it recovers word_derivative.
complex branch_log_derivative(const SchottkyGroup& g, const Word& w, complex z);

/// min |c| over all nonidentity reduced words of length <= n_max; strictly
/// positive for valid Schottky data (throws ZeroEncountered otherwise).
double min_c_entry(const SchottkyGroup& g, int n_max);

/// Signed derivative of log gamma_alpha'(x) - log gamma_beta'(x) at real x.
/// Its magnitude equals 2|c_b d_a - c_a d_b| (gamma_a'(x) gamma_b'(x))^{1/2}.
double phase_derivative(const SchottkyGroup& g, const Word& alpha, const Word& beta, double x);

/// Empirical contraction rates and distortion bound at word length n, from a
/// 64-point grid on each interval I_j over words with last letter != j:
///   theta_low/high: min/max over words of (sup |gamma_w'|)^{1/n},
///   m1_estimate:    max over words of sup |gamma_w''/gamma_w'|.
struct DistortionReport {
  int n = 0;
  double theta_low = 0;
  double theta_high = 0;
  double m1_estimate = 0;
};
DistortionReport distortion_report(const SchottkyGroup& g, int n);

}  // namespace selzeta::geo
