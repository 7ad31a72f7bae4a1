#include "oracles.hpp"

#include <cmath>
#include <set>

namespace oracles {

using selzeta::geo::Interval;
using selzeta::geo::Mobius;
using selzeta::geo::SchottkyGroup;
using selzeta::geo::Word;

complex cylinder_zeta(complex s, double t) {
  complex prod = 1.0;
  for (int k = 0; k < 4000; ++k) {
    complex factor = 1.0 - std::exp(-2.0 * t * (s + static_cast<double>(k)));
    prod *= factor * factor;
    if (std::exp(-2.0 * t * (s.real() + k)) < 1e-18) break;
  }
  return prod;
}

std::vector<Interval> word_interval_cover(const SchottkyGroup& g, double target_len,
                                          int depth_cap) {
  std::vector<Interval> out;
  std::function<void(const Mobius&, int, int)> rec = [&](const Mobius& prefix, int last,
                                                         int depth) {
    Interval iv = selzeta::geo::map_interval(prefix, g.interval(g.inverse_letter(last)));
    if (iv.length() <= target_len || depth >= depth_cap) {
      out.push_back(iv);
      return;
    }
    Mobius next = prefix * g.gens[last];
    for (int b = 0; b < g.letters(); ++b)
      if (b != g.inverse_letter(last)) rec(next, b, depth + 1);
  };
  for (int b = 0; b < g.letters(); ++b) rec(Mobius::identity(), b, 1);
  return out;
}

double box_counting_delta(const SchottkyGroup& g, int depth_cap, int j_min, int j_max) {
  std::vector<double> xs, ys;
  for (int j = j_min; j <= j_max; ++j) {
    double eps = std::ldexp(1.0, -j);
    std::set<long long> boxes;
    for (const Interval& iv : word_interval_cover(g, eps / 8, depth_cap)) {
      long long b0 = static_cast<long long>(std::floor(iv.lo / eps));
      long long b1 = static_cast<long long>(std::floor(iv.hi / eps));
      for (long long b = b0; b <= b1; ++b) boxes.insert(b);
    }
    xs.push_back(j * std::log(2.0));
    ys.push_back(std::log(static_cast<double>(boxes.size())));
  }
  return least_squares_slope(xs, ys);
}

std::vector<Word> brute_force_words(int p, int n, int excluded_last) {
  std::vector<Word> out;
  int L = 2 * p;
  std::function<void(Word&)> rec = [&](Word& w) {
    if (static_cast<int>(w.size()) == n) {
      if (excluded_last < 0 || w.back() != excluded_last) out.push_back(w);
      return;
    }
    for (int b = 0; b < L; ++b) {
      if (!w.empty() && b == (w.back() + p) % L) continue;
      w.push_back(b);
      rec(w);
      w.pop_back();
    }
  };
  Word w;
  rec(w);
  return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace oracles
