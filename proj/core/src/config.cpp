#include "selzeta/config.hpp"

#include <cmath>

#include "selzeta/errors.hpp"

namespace selzeta::cli {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::string_view data) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(data);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

RunConfig RunConfig::defaults() {
  RunConfig cfg;
  cfg.doc_ = nlohmann::json{
      {"group", "symmetric:p=2,centers=[-3;-1;1;3],radius=0.5"},
      {"out", "out"},
      {"threads", 1},
      {"no_cache", false},
      {"operator",
       {{"K", 40},
        {"refined_K", 20},
        {"quad_factor", 4},
        {"refined_threshold", 10.0},
        {"h_min", 1e-4}}},
      {"dim", {{"tol", 1e-10}}},
      {"pressure",
       {{"sigmas", {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.75, 1.0}}, {"n_orbit", 8}}},
      {"lengths", {{"n_max", 6}}},
      {"cover", {{"h", {1e-2, 3e-3, 1e-3, 3e-4}}}},
      {"zeta",
       {{"re", 2.0}, {"im", 0.0}, {"method", "det"}, {"q_max", 12}, {"cutoff", 45.0}, {"n", 1}}},
      {"grid",
       {{"re_lo", 0.0}, {"re_hi", 1.0}, {"im_lo", 0.0}, {"im_hi", 5.0}, {"dsig", 0.1}, {"dt", 0.25}}},
      {"scan",
       {{"re_lo", -0.4}, {"re_hi", 0.4}, {"im_lo", 0.5}, {"im_hi", 10.0}, {"tol", 1e-9},
        {"resolve", 4e-3}}},
      {"count", {{"sigmas", {0.16, 0.2}}, {"Ts", {5.0, 10.0, 20.0, 40.0}}}},
      {"tau", {{"nu", nullptr}, {"sigmas", nlohmann::json::array()}}},
      {"weyl", {{"sigmas", {0.2}}, {"Ts", {5.0, 10.0, 20.0, 40.0}}}},
  };
  return cfg;
}

namespace {

void deep_merge(nlohmann::json& base, const nlohmann::json& overlay) {
  if (!overlay.is_object() || !base.is_object()) {
    base = overlay;
    return;
  }
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object())
      deep_merge(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

[[noreturn]] void bad(const std::string& path, const std::string& why) {
  fail(errc::config_invalid, path + ": " + why);
}

void require_number(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
}

void require_number_array(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of numbers");
  for (const auto& v : j)
    if (!v.is_number()) bad(path, "expected an array of numbers");
}

}  // namespace

void RunConfig::merge(const nlohmann::json& overlay) { deep_merge(doc_, overlay); }

void RunConfig::validate() const {
  const nlohmann::json& d = doc_;
  const RunConfig def = defaults();
  // Unknown top-level keys are configuration mistakes, not extensions.
  for (auto it = d.begin(); it != d.end(); ++it)
    if (!def.doc().contains(it.key())) bad(it.key(), "unknown key");
  for (const char* key : {"operator", "dim", "pressure", "lengths", "cover", "zeta", "grid",
                          "scan", "count", "tau", "weyl"}) {
    if (!d.contains(key)) continue;
    if (!d.at(key).is_object()) bad(key, "expected an object");
    for (auto it = d.at(key).begin(); it != d.at(key).end(); ++it)
      if (!def.doc().at(key).contains(it.key())) bad(std::string(key) + "." + it.key(), "unknown key");
  }

  if (!d.at("group").is_string()) bad("group", "expected a fixture string or file:<path>");
  if (!d.at("out").is_string()) bad("out", "expected a directory path");
  if (!d.at("threads").is_number_integer() || d.at("threads").get<int>() < 1)
    bad("threads", "expected a positive integer");
  if (!d.at("no_cache").is_boolean()) bad("no_cache", "expected a boolean");

  const auto& op = d.at("operator");
  if (op.at("K").get<int>() < 2) bad("operator.K", "must be >= 2");
  if (op.at("refined_K").get<int>() < 2) bad("operator.refined_K", "must be >= 2");
  if (op.at("quad_factor").get<int>() < 2) bad("operator.quad_factor", "must be >= 2");
  require_number(op.at("refined_threshold"), "operator.refined_threshold");
  require_number(op.at("h_min"), "operator.h_min");

  if (!(d.at("dim").at("tol").get<double>() > 0)) bad("dim.tol", "must be positive");
  require_number_array(d.at("pressure").at("sigmas"), "pressure.sigmas");
  if (d.at("pressure").at("n_orbit").get<int>() < 1) bad("pressure.n_orbit", "must be >= 1");
  if (d.at("lengths").at("n_max").get<int>() < 1) bad("lengths.n_max", "must be >= 1");
  require_number_array(d.at("cover").at("h"), "cover.h");

  const auto& z = d.at("zeta");
  require_number(z.at("re"), "zeta.re");
  require_number(z.at("im"), "zeta.im");
  std::string method = z.at("method").get<std::string>();
  if (method != "det" && method != "trace" && method != "euler")
    bad("zeta.method", "expected det | trace | euler");
  if (z.at("q_max").get<int>() < 1) bad("zeta.q_max", "must be >= 1");
  if (z.at("n").get<int>() < 1) bad("zeta.n", "must be >= 1");

  for (const char* key : {"grid", "scan"}) {
    const auto& r = d.at(key);
    for (const char* f : {"re_lo", "re_hi", "im_lo", "im_hi"})
      require_number(r.at(f), std::string(key) + "." + f);
  }
  if (!(d.at("grid").at("dsig").get<double>() > 0)) bad("grid.dsig", "must be positive");
  if (!(d.at("grid").at("dt").get<double>() > 0)) bad("grid.dt", "must be positive");
  if (!(d.at("scan").at("tol").get<double>() > 0)) bad("scan.tol", "must be positive");
  if (!(d.at("scan").at("resolve").get<double>() > 0)) bad("scan.resolve", "must be positive");

  require_number_array(d.at("count").at("sigmas"), "count.sigmas");
  require_number_array(d.at("count").at("Ts"), "count.Ts");
  require_number_array(d.at("weyl").at("sigmas"), "weyl.sigmas");
  require_number_array(d.at("weyl").at("Ts"), "weyl.Ts");
  const auto& nu = d.at("tau").at("nu");
  if (!nu.is_null() && !nu.is_number()) bad("tau.nu", "expected null or a number");
  require_number_array(d.at("tau").at("sigmas"), "tau.sigmas");
}

}  // namespace selzeta::cli
