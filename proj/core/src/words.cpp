#include "selzeta/words.hpp"

#include <algorithm>
#include <cmath>

namespace selzeta::geo {

bool is_admissible(const Word& w, int p) {
  int L = 2 * p;
  for (int a : w)
    if (a < 0 || a >= L) return false;
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i + 1] == (w[i] + p) % L) return false;
  return true;
}

bool is_cyclically_admissible(const Word& w, int p) {
  if (!is_admissible(w, p)) return false;
  if (w.size() <= 1) return true;
  return w.front() != (w.back() + p) % (2 * p);
}

Word canonical_rotation(const Word& w) {
  if (w.empty()) return w;
  size_t n = w.size();
  Word best = w;
  Word rot = w;
  for (size_t r = 1; r < n; ++r) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

bool is_primitive_word(const Word& w) {
  size_t n = w.size();
  for (size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool rep = true;
    for (size_t i = d; i < n && rep; ++i) rep = (w[i] == w[i % d]);
    if (rep) return false;
  }
  return true;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(w[i] + 1);
  }
  return s;
}

std::uint64_t count_words(int p, int n, int excluded_last) {
  if (n <= 0) return 0;
  int L = 2 * p;
  std::vector<std::uint64_t> cnt(L, 1);  // counts by last letter
  for (int step = 1; step < n; ++step) {
    std::vector<std::uint64_t> nxt(L, 0);
    std::uint64_t total = 0;
    for (int a = 0; a < L; ++a) total += cnt[a];
    for (int b = 0; b < L; ++b) nxt[b] = total - cnt[(b + p) % L];
    cnt.swap(nxt);
  }
  std::uint64_t total = 0;
  for (int a = 0; a < L; ++a)
    if (a != excluded_last) total += cnt[a];
  return total;
}

Mobius compose_word(const SchottkyGroup& g, const Word& w) {
  Mobius m = Mobius::identity();
  for (int a : w) {
    if (a < 0 || a >= g.letters())
      fail(errc::bad_letter, "letter " + std::to_string(a + 1) + " out of range");
    m = m * g.gens[a];
  }
  return m;
}

complex word_derivative(const SchottkyGroup& g, const Word& w, complex z) {
  complex prod = 1.0;
  complex cur = z;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    int a = *it;
    if (a < 0 || a >= g.letters())
      fail(errc::bad_letter, "letter " + std::to_string(a + 1) + " out of range");
    const Mobius& m = g.gens[a];
    complex den = m.c * cur + m.d;
    if (std::abs(den) < 1e-14)
      fail(errc::pole_encountered, "partial composition hit a pole");
    prod *= 1.0 / (den * den);
    cur = m.apply(cur);
  }
  return prod;
}

complex branch_log_derivative(const SchottkyGroup& g, const Word& w, complex z) {
  complex sum = 0.0;
  complex cur = z;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const Mobius& m = g.gens[*it];
    complex den = m.c * cur + m.d;
    if (std::abs(den) < 1e-14)
      fail(errc::pole_encountered, "partial composition hit a pole");
    complex factor = 1.0 / (den * den);
    if (factor.imag() == 0 && factor.real() <= 0)
      fail(errc::branch_cut_hit, "derivative factor on the negative real axis");
    sum += std::log(factor);
    cur = m.apply(cur);
  }
  return sum;
}

double min_c_entry(const SchottkyGroup& g, int n_max) {
  double best = std::abs(g.gens[0].c);
  for_each_word_up_to(g, n_max, [&](const Word&, const Mobius& m) {
    best = std::min(best, std::abs(m.c));
  });
  if (!(best > 1e-12))
    fail(errc::zero_encountered, "|c| vanished on a nonidentity word");
  return best;
}

double phase_derivative(const SchottkyGroup& g, const Word& alpha, const Word& beta, double x) {
  if (alpha.size() != beta.size())
    fail(errc::word_length_mismatch, "alpha and beta must have equal length");
  Mobius ma = compose_word(g, alpha);
  Mobius mb = compose_word(g, beta);
  return ma.log_derivative_slope(x) - mb.log_derivative_slope(x);
}

DistortionReport distortion_report(const SchottkyGroup& g, int n) {
  constexpr int kGrid = 64;
  DistortionReport rep;
  rep.n = n;
  double lo = 0, hi = 0, m1 = 0;
  bool first = true;
  for (int j = 0; j < g.letters(); ++j) {
    Interval iv = g.interval(j);
    for_each_word(g, n, j, [&](const Word&, const Mobius& m) {
      double sup_d = 0, sup_ratio = 0;
      for (int i = 0; i < kGrid; ++i) {
        double x = iv.lo + iv.length() * i / (kGrid - 1);
        double den = m.c * x + m.d;
        sup_d = std::max(sup_d, 1.0 / (den * den));
        sup_ratio = std::max(sup_ratio, std::abs(2 * m.c / den));
      }
      double root = std::pow(sup_d, 1.0 / n);
      if (first) { lo = hi = root; first = false; }
      lo = std::min(lo, root);
      hi = std::max(hi, root);
      m1 = std::max(m1, sup_ratio);
    });
  }
  rep.theta_low = lo;
  rep.theta_high = hi;
  rep.m1_estimate = m1;
  return rep;
}

}  // namespace selzeta::geo
