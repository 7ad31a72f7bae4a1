#include "selzeta/schottky.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace selzeta::geo {

namespace {

constexpr int kBoundarySamples = 64;
constexpr double kPairingTol = 1e-8;

// |gamma(z) - c_to| - r_to at a boundary point of the source disc.
double boundary_mismatch(const Mobius& m, const Disc& from, const Disc& to, int k, int n) {
  double th = 2 * M_PI * k / n;
  complex z{from.center + from.radius * std::cos(th), from.radius * std::sin(th)};
  complex w = m.apply(z);
  return std::abs(std::abs(w - complex{to.center, 0}) - to.radius);
}

}  // namespace

double SchottkyGroup::min_radius() const {
  double r = discs.empty() ? 0 : discs[0].radius;
  for (const Disc& d : discs) r = std::min(r, d.radius);
  return r;
}

double SchottkyGroup::min_disjointness_margin() const {
  double m = disjointness_margins.empty() ? 0 : disjointness_margins[0];
  for (double v : disjointness_margins) m = std::min(m, v);
  return m;
}

Mobius make_pairing(const Disc& from, const Disc& to) {
  double rr = from.radius * to.radius;
  if (!(rr > 0))
    fail(errc::degenerate_discs, "nonpositive radius product");
  Mobius m{to.center, -(from.center * to.center + rr), 1.0, -from.center};
  return normalized(m);
}

SchottkyGroup validate_schottky(const std::vector<Disc>& discs,
                                const std::vector<Mobius>& generators) {
  if (discs.size() < 2 || discs.size() % 2 != 0)
    fail(errc::config_invalid, "need 2p discs, got " + std::to_string(discs.size()));
  int p = static_cast<int>(discs.size()) / 2;
  if (static_cast<int>(generators.size()) != p)
    fail(errc::config_invalid, "need p generators, got " + std::to_string(generators.size()));
  for (const Disc& d : discs)
    if (!(d.radius > 0)) fail(errc::degenerate_discs, "disc radius must be positive");

  SchottkyGroup g;
  g.p = p;
  g.discs = discs;
  g.elementary = (p == 1);

  // Closed discs pairwise disjoint; record the margins.
  for (size_t i = 0; i < discs.size(); ++i) {
    for (size_t j = i + 1; j < discs.size(); ++j) {
      double gap = std::abs(discs[i].center - discs[j].center) -
                   (discs[i].radius + discs[j].radius);
      g.disjointness_margins.push_back(gap);
      if (!(gap > 0)) {
        std::ostringstream os;
        os << "closed discs " << i + 1 << " and " << j + 1 << " intersect (gap " << gap << ")";
        fail(errc::discs_overlap, os.str());
      }
    }
  }

  g.gens.resize(2 * p);
  for (int i = 0; i < p; ++i) {
    Mobius m = normalized(generators[i]);  // throws NonUnitDeterminant on det <= 0
    g.gens[i] = m;
    g.gens[i + p] = m.inverse();
  }

  // Pairing: gens[i] maps the boundary circle of disc i onto that of disc i+p,
  // and the interior of disc i to the exterior of the closed disc i+p.
  for (int i = 0; i < p; ++i) {
    const Disc& from = discs[i];
    const Disc& to = discs[i + p];
    double worst = 0;
    for (int k = 0; k < kBoundarySamples; ++k)
      worst = std::max(worst, boundary_mismatch(g.gens[i], from, to, k, kBoundarySamples));
    if (worst > kPairingTol) {
      std::ostringstream os;
      os << "generator " << i + 1 << " boundary image misses disc " << i + p + 1
         << " by " << worst;
      fail(errc::pairing_violated, os.str());
    }
    // Two interior points must land outside the closed partner disc (or at infinity).
    for (double f : {0.5, -0.25}) {
      double x = from.center + f * from.radius;
      double den = g.gens[i].c * x + g.gens[i].d;
      if (std::abs(den) < 1e-12) continue;  // maps to infinity: outside
      double w = g.gens[i].apply(x);
      if (std::abs(w - to.center) <= to.radius)
        fail(errc::pairing_violated, "interior point maps inside the partner disc");
    }
  }
  return g;
}

SchottkyGroup cylinder_group(double t) {
  if (!(t > 0)) fail(errc::config_invalid, "cylinder parameter t must be positive");
  double ch = std::cosh(t), sh = std::sinh(t);
  std::vector<Disc> discs{{-ch / sh, 1 / sh}, {ch / sh, 1 / sh}};
  std::vector<Mobius> gens{{ch, sh, sh, ch}};
  return validate_schottky(discs, gens);
}

SchottkyGroup symmetric_group(int p, const std::vector<double>& centers, double radius) {
  if (p < 1) fail(errc::config_invalid, "p must be >= 1");
  if (static_cast<int>(centers.size()) != 2 * p)
    fail(errc::config_invalid, "need 2p centers");
  std::vector<Disc> discs;
  for (double c : centers) discs.push_back({c, radius});
  std::vector<Mobius> gens;
  for (int i = 0; i < p; ++i) gens.push_back(make_pairing(discs[i], discs[i + p]));
  return validate_schottky(discs, gens);
}

namespace {

double parse_real(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(errc::config_invalid, "cannot parse real '" + s + "' for " + what);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) { out.push_back(cur); cur.clear(); }
    else cur.push_back(ch);
  }
  out.push_back(cur);
  return out;
}

}  // namespace

SchottkyGroup parse_group_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "cylinder") {
    if (rest.rfind("t=", 0) != 0) fail(errc::config_invalid, "expected cylinder:t=<real>");
    return cylinder_group(parse_real(rest.substr(2), "t"));
  }
  if (kind == "symmetric") {
    // symmetric:p=<int>,centers=<c1;...;c2p>,radius=<real>
    // centers may also be bracketed comma-separated: centers=[-3,-1,1,3]
    int p = -1;
    std::vector<double> centers;
    double radius = -1;
    std::string body = rest;
    // Normalize a bracketed centers list so commas inside it survive the split.
    auto lb = body.find('[');
    auto rb = body.find(']');
    if (lb != std::string::npos && rb != std::string::npos && rb > lb) {
      for (size_t i = lb; i < rb; ++i)
        if (body[i] == ',') body[i] = ';';
      body.erase(rb, 1);
      body.erase(lb, 1);
    }
    for (const std::string& part : split(body, ',')) {
      auto eq = part.find('=');
      if (eq == std::string::npos) fail(errc::config_invalid, "bad fixture field '" + part + "'");
      std::string key = part.substr(0, eq), val = part.substr(eq + 1);
      if (key == "p") p = static_cast<int>(parse_real(val, "p"));
      else if (key == "radius") radius = parse_real(val, "radius");
      else if (key == "centers") {
        for (const std::string& c : split(val, ';'))
          if (!c.empty()) centers.push_back(parse_real(c, "center"));
      } else fail(errc::config_invalid, "unknown fixture key '" + key + "'");
    }
    if (p < 1 || radius <= 0 || centers.empty())
      fail(errc::config_invalid, "symmetric fixture needs p, centers, radius");
    return symmetric_group(p, centers, radius);
  }
  fail(errc::config_invalid, "unknown fixture kind '" + kind + "'");
}

nlohmann::json group_to_json(const SchottkyGroup& g) {
  nlohmann::json j;
  j["p"] = g.p;
  j["discs"] = nlohmann::json::array();
  for (const Disc& d : g.discs)
    j["discs"].push_back({{"center", d.center}, {"radius", d.radius}});
  j["generators"] = nlohmann::json::array();
  for (int i = 0; i < g.p; ++i) {
    const Mobius& m = g.gens[i];
    j["generators"].push_back({m.a, m.b, m.c, m.d});
  }
  return j;
}

SchottkyGroup group_from_json(const nlohmann::json& j) {
  if (!j.contains("p") || !j.contains("discs") || !j.contains("generators"))
    fail(errc::config_invalid, "group JSON needs keys p, discs, generators");
  std::vector<Disc> discs;
  for (const auto& d : j.at("discs"))
    discs.push_back({d.at("center").get<double>(), d.at("radius").get<double>()});
  std::vector<Mobius> gens;
  for (const auto& m : j.at("generators")) {
    if (m.size() != 4) fail(errc::config_invalid, "generator entries must be [a,b,c,d]");
    gens.push_back({m[0].get<double>(), m[1].get<double>(), m[2].get<double>(), m[3].get<double>()});
  }
  int p = j.at("p").get<int>();
  if (static_cast<int>(discs.size()) != 2 * p)
    fail(errc::config_invalid, "disc count does not match p");
  return validate_schottky(discs, gens);
}

}  // namespace selzeta::geo
