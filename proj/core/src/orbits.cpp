#include "selzeta/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace selzeta::dyn {

std::optional<int> BowenSeriesMap::interval_index(double x) const {
  for (int j = 0; j < group->letters(); ++j)
    if (group->interval(j).contains(x)) return j;
  return std::nullopt;
}

double BowenSeriesMap::apply(double x) const {
  auto j = interval_index(x);
  if (!j) fail(errc::config_invalid, "point outside the interval family");
  return group->gens[*j].apply(x);
}

namespace {

std::string word_key(const Word& w) {
  std::string k;
  k.reserve(w.size());
  for (int a : w) k.push_back(static_cast<char>('a' + a));
  return k;
}

// Deterministic descending-magnitude compensated sum.
complex sorted_kahan_sum(std::vector<complex>& terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const complex& x, const complex& y) {
    return std::norm(x) > std::norm(y);
  });
  complex sum = 0, comp = 0;
  for (const complex& t : terms) {
    complex y = t - comp;
    complex u = sum + y;
    comp = (u - sum) - y;
    sum = u;
  }
  return sum;
}

}  // namespace

std::vector<OrbitClass> periodic_orbits(const SchottkyGroup& g, int n) {
  std::vector<OrbitClass> out;
  std::unordered_set<std::string> seen;
  geo::for_each_cyclic_word(g, n, [&](const Word& w, const geo::Mobius&) {
    Word can = geo::canonical_rotation(w);
    if (!seen.insert(word_key(can)).second) return;
    geo::Mobius m = geo::compose_word(g, can);
    OrbitClass oc;
    oc.word = can;
    oc.length = geo::log_multiplier(m);  // throws NonHyperbolicElement
    oc.multiplier = std::exp(oc.length);
    oc.fixed_point = geo::attracting_fixed_point(m);
    oc.primitive = geo::is_primitive_word(can);
    out.push_back(std::move(oc));
  });
  return out;
}

complex periodic_point_sum(const SchottkyGroup& g, complex s, int q) {
  std::vector<complex> terms;
  geo::for_each_cyclic_word(g, q, [&](const Word&, const geo::Mobius& m) {
    double l = geo::log_multiplier(m);
    terms.push_back(std::exp(-s * l) / (1.0 - std::exp(-l)));
  });
  return sorted_kahan_sum(terms);
}

double pressure_orbit(const SchottkyGroup& g, double sigma, int n) {
  std::vector<double> exponents;
  geo::for_each_cyclic_word(g, n, [&](const Word&, const geo::Mobius& m) {
    exponents.push_back(-sigma * geo::log_multiplier(m));
  });
  if (exponents.empty()) fail(errc::config_invalid, "no periodic points at period " + std::to_string(n));
  double mx = *std::max_element(exponents.begin(), exponents.end());
  std::vector<double> scaled;
  scaled.reserve(exponents.size());
  for (double e : exponents) scaled.push_back(std::exp(e - mx));
  std::stable_sort(scaled.begin(), scaled.end(), std::greater<double>());
  double sum = 0, comp = 0;
  for (double t : scaled) {
    double y = t - comp;
    double u = sum + y;
    comp = (u - sum) - y;
    sum = u;
  }
  return (mx + std::log(sum)) / n;
}

std::vector<LengthEntry> length_spectrum(const SchottkyGroup& g, int n_max) {
  std::vector<LengthEntry> out;
  for (int n = 1; n <= n_max; ++n) {
    for (const OrbitClass& oc : periodic_orbits(g, n)) {
      if (!oc.primitive) continue;
      out.push_back({oc.length, oc.word, true});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const LengthEntry& x, const LengthEntry& y) {
    if (x.length != y.length) return x.length < y.length;
    return x.word < y.word;
  });
  return out;
}

std::vector<std::pair<double, int>> group_lengths(const std::vector<LengthEntry>& entries,
                                                  double tol) {
  std::vector<std::pair<double, int>> out;
  for (const LengthEntry& e : entries) {
    if (!out.empty() && std::abs(out.back().first - e.length) <= tol)
      out.back().second += 1;
    else
      out.emplace_back(e.length, 1);
  }
  return out;
}

}  // namespace selzeta::dyn
