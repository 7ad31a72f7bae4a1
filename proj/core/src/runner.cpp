#include "selzeta/runner.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "selzeta/orbits.hpp"
#include "selzeta/pressure.hpp"
#include "selzeta/resonances.hpp"
#include "selzeta/version.hpp"
#include "selzeta/zeta.hpp"

namespace selzeta::cli {

namespace {

using geo::complex;
using geo::SchottkyGroup;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SchottkyGroup load_group(const nlohmann::json& doc) {
  std::string spec = doc.at("group").get<std::string>();
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) fail(errc::io_error, "cannot open group file " + spec.substr(5));
    nlohmann::json j;
    in >> j;
    return geo::group_from_json(j);
  }
  return geo::parse_group_spec(spec);
}

zeta::ZetaOptions zeta_options(const nlohmann::json& doc) {
  const auto& op = doc.at("operator");
  zeta::ZetaOptions o;
  o.K = op.at("K").get<int>();
  o.refined_K = op.at("refined_K").get<int>();
  o.quad_factor = op.at("quad_factor").get<int>();
  o.refined_threshold = op.at("refined_threshold").get<double>();
  o.h_min = op.at("h_min").get<double>();
  o.threads = doc.at("threads").get<int>();
  return o;
}

scan::ScanOptions scan_options(const nlohmann::json& doc) {
  const auto& op = doc.at("operator");
  scan::ScanOptions o;
  o.K = op.at("K").get<int>();
  o.refined_K = op.at("refined_K").get<int>();
  o.quad_factor = op.at("quad_factor").get<int>();
  o.refined_threshold = op.at("refined_threshold").get<double>();
  o.h_min = op.at("h_min").get<double>();
  o.tol = doc.at("scan").at("tol").get<double>();
  o.resolve_size = doc.at("scan").at("resolve").get<double>();
  o.threads = doc.at("threads").get<int>();
  return o;
}

nlohmann::json zeta_value_json(const zeta::ZetaValue& v) {
  nlohmann::json j;
  j["re_s"] = v.s.real();
  j["im_s"] = v.s.imag();
  j["re"] = v.value.real();
  j["im"] = v.value.imag();
  j["log_abs"] = v.log_abs;
  j["method"] = v.method;
  j["cover"] = v.cover;
  j["K"] = v.K;
  j["n"] = v.n;
  j["q_max"] = v.q_max;
  j["cutoff"] = v.cutoff;
  j["h"] = v.h;
  j["tail_estimate"] = v.tail_estimate;
  j["warning"] = v.warning;
  return j;
}

struct Pipeline {
  const nlohmann::json& doc;
  SchottkyGroup group;
  std::vector<std::pair<std::string, std::string>> outputs;  // name -> content

  void emit(const std::string& name, const std::string& content) {
    outputs.emplace_back(name, content);
  }

  std::vector<double> dlist(const nlohmann::json& arr) const {
    std::vector<double> v;
    for (const auto& x : arr) v.push_back(x.get<double>());
    return v;
  }

  dyn::DimensionResult compute_dim() const {
    return dyn::hausdorff_dimension(group, doc.at("dim").at("tol").get<double>(),
                                    doc.at("operator").at("K").get<int>());
  }

  nlohmann::json dim_json() const {
    dyn::DimensionResult d = compute_dim();
    return {{"delta", d.delta},     {"residual", d.residual}, {"K", d.K},
            {"method", "bowen_eig"}, {"bracket_lo", d.bracket_lo}, {"bracket_hi", d.bracket_hi}};
  }

  void do_validate() {
    nlohmann::json j = geo::group_to_json(group);
    j["valid"] = true;
    j["elementary"] = group.elementary;
    j["disjointness_margins"] = group.disjointness_margins;
    emit("validate.json", j.dump(2) + "\n");
  }

  void do_dim() { emit("dim.json", dim_json().dump(2) + "\n"); }

  void do_pressure() {
    int K = doc.at("operator").at("K").get<int>();
    int n_orbit = doc.at("pressure").at("n_orbit").get<int>();
    std::ostringstream os;
    os << "sigma,p_eig,p_orbit,n,K\n";
    for (const auto& s : dyn::pressure_curve(group, dlist(doc.at("pressure").at("sigmas")), K,
                                             n_orbit))
      os << fmt(s.sigma) << ',' << fmt(s.p_eig) << ',' << fmt(s.p_orbit) << ',' << n_orbit
         << ',' << K << "\n";
    emit("pressure.csv", os.str());
  }

  void do_lengths() {
    int n_max = doc.at("lengths").at("n_max").get<int>();
    std::ostringstream os;
    os << "length,word,primitive\n";
    for (const auto& e : dyn::length_spectrum(group, n_max))
      os << fmt(e.length) << ',' << geo::word_to_string(e.word) << ','
         << (e.primitive ? "true" : "false") << "\n";
    emit("lengths.csv", os.str());
  }

  void do_cover() {
    std::ostringstream os;
    os << "h,N_h,max_diam\n";
    for (double h : dlist(doc.at("cover").at("h"))) {
      bergman::DiscCover c = bergman::refined_cover(group, h);
      os << fmt(h) << ',' << c.size() << ',' << fmt(c.max_diam) << "\n";
    }
    emit("cover.csv", os.str());
  }

  void do_zeta() {
    const auto& z = doc.at("zeta");
    complex s{z.at("re").get<double>(), z.at("im").get<double>()};
    std::string method = z.at("method").get<std::string>();
    zeta::ZetaValue v;
    if (method == "det") {
      int n = z.at("n").get<int>();
      v = n == 1 ? zeta::zeta_det(group, s, zeta_options(doc))
                 : zeta::zeta_det_power(group, s, n, zeta_options(doc));
    } else if (method == "trace") {
      v = zeta::zeta_trace_exp(group, s, z.at("q_max").get<int>());
    } else {
      v = zeta::zeta_euler(group, s, z.at("cutoff").get<double>());
    }
    emit("zeta.json", zeta_value_json(v).dump(2) + "\n");
  }

  void do_grid() {
    const auto& gr = doc.at("grid");
    zeta::GridSpec spec{gr.at("re_lo").get<double>(), gr.at("re_hi").get<double>(),
                        gr.at("im_lo").get<double>(), gr.at("im_hi").get<double>(),
                        gr.at("dsig").get<double>(),  gr.at("dt").get<double>()};
    zeta::ZetaGrid grid = zeta::log_zeta_grid(group, spec, zeta_options(doc));
    std::ostringstream os;
    os << "sigma,t,log_abs,arg\n";
    for (size_t it = 0; it < grid.ts.size(); ++it)
      for (size_t is = 0; is < grid.sigmas.size(); ++is)
        os << fmt(grid.sigmas[is]) << ',' << fmt(grid.ts[it]) << ','
           << fmt(grid.log_abs[it * grid.sigmas.size() + is]) << ','
           << fmt(grid.arg[it * grid.sigmas.size() + is]) << "\n";
    emit("grid.csv", os.str());
  }

  scan::Box scan_box() const {
    const auto& sc = doc.at("scan");
    return {sc.at("re_lo").get<double>(), sc.at("re_hi").get<double>(),
            sc.at("im_lo").get<double>(), sc.at("im_hi").get<double>()};
  }

  void do_scan() {
    scan::ScanResult res = scan::locate_zeros(group, scan_box(), scan_options(doc));
    std::ostringstream os;
    os << "re,im,multiplicity,residual,box_id\n";
    for (const auto& r : res.zeros)
      os << fmt(r.s.real()) << ',' << fmt(r.s.imag()) << ',' << r.multiplicity << ','
         << fmt(r.newton_residual) << ',' << r.box_id << "\n";
    emit("scan.csv", os.str());
    std::ostringstream us;
    us << "re_lo,re_hi,im_lo,im_hi,count,box_id\n";
    for (const auto& u : res.unresolved)
      us << fmt(u.box.re_lo) << ',' << fmt(u.box.re_hi) << ',' << fmt(u.box.im_lo) << ','
         << fmt(u.box.im_hi) << ',' << u.count << ',' << u.box_id << "\n";
    emit("scan_unresolved.csv", us.str());
  }

  void do_count() {
    dyn::DimensionResult d = compute_dim();
    auto counts = scan::strip_counts(group, dlist(doc.at("count").at("sigmas")),
                                     dlist(doc.at("count").at("Ts")), d.delta,
                                     scan_options(doc));
    std::ostringstream os;
    os << "sigma,T,N,M,lower,upper\n";
    for (const auto& c : counts)
      os << fmt(c.sigma) << ',' << fmt(c.T) << ',' << c.N << ',' << c.M << ',' << c.N_lo << ','
         << c.N_hi << "\n";
    emit("count.csv", os.str());
  }

  std::vector<double> tau_grid(double delta) const {
    std::vector<double> sig = dlist(doc.at("tau").at("sigmas"));
    if (sig.empty())
      for (int i = 0; i <= 8; ++i) sig.push_back(delta / 2 + (delta / 2) * i / 8.0);
    return sig;
  }

  scan::TauCurve compute_tau() const {
    dyn::DimensionResult d = compute_dim();
    const auto& nu = doc.at("tau").at("nu");
    std::optional<double> nu_override;
    if (!nu.is_null()) nu_override = nu.get<double>();
    return scan::tau_curve(group, nu_override, tau_grid(d.delta),
                           doc.at("operator").at("K").get<int>());
  }

  void do_tau() {
    scan::TauCurve curve = compute_tau();
    std::ostringstream os;
    os << "sigma,tau,nu\n";
    for (const auto& [sig, tau] : curve.samples)
      os << fmt(sig) << ',' << fmt(tau) << ',' << fmt(curve.nu) << "\n";
    emit("tau.csv", os.str());
    nlohmann::json meta{{"nu", curve.nu},
                        {"delta", curve.delta},
                        {"theta_bar", curve.theta_bar},
                        {"p_half", curve.p_half},
                        {"tau_prime_at_half", curve.tau_prime_at_half}};
    emit("tau_meta.json", meta.dump(2) + "\n");
  }

  void do_weyl() {
    dyn::DimensionResult d = compute_dim();
    auto counts = scan::strip_counts(group, dlist(doc.at("weyl").at("sigmas")),
                                     dlist(doc.at("weyl").at("Ts")), d.delta,
                                     scan_options(doc));
    auto rows = scan::weyl_fit(counts, d.delta);
    std::ostringstream os;
    os << "sigma,exponent,residual,points,flagged\n";
    for (const auto& r : rows)
      os << fmt(r.sigma) << ',' << fmt(r.exponent) << ',' << fmt(r.residual) << ','
         << r.points_used << ',' << (r.flagged ? "true" : "false") << "\n";
    emit("weyl.csv", os.str());
  }

  void do_report() {
    nlohmann::json j;
    j["dim"] = dim_json();
    scan::TauCurve curve = compute_tau();
    nlohmann::json tj;
    tj["nu"] = curve.nu;
    tj["delta"] = curve.delta;
    tj["tau_prime_at_half"] = curve.tau_prime_at_half;
    tj["samples"] = nlohmann::json::array();
    for (const auto& [sig, tau] : curve.samples)
      tj["samples"].push_back({{"sigma", sig}, {"tau", tau}});
    j["tau"] = tj;
    scan::ScanResult res = scan::locate_zeros(group, scan_box(), scan_options(doc));
    nlohmann::json sj = nlohmann::json::array();
    for (const auto& r : res.zeros)
      sj.push_back({{"re", r.s.real()},
                    {"im", r.s.imag()},
                    {"multiplicity", r.multiplicity},
                    {"residual", r.newton_residual}});
    j["scan"] = {{"zeros", sj},
                 {"total_count", res.total_count},
                 {"unresolved", res.unresolved.size()}};
    dyn::DimensionResult d = compute_dim();
    auto counts = scan::strip_counts(group, dlist(doc.at("count").at("sigmas")),
                                     dlist(doc.at("count").at("Ts")), d.delta,
                                     scan_options(doc));
    nlohmann::json cj = nlohmann::json::array();
    for (const auto& c : counts)
      cj.push_back({{"sigma", c.sigma}, {"T", c.T}, {"N", c.N}, {"M", c.M}});
    j["count"] = cj;
    emit("report.json", j.dump(2) + "\n");
  }
};

}  // namespace

bool is_subcommand(const std::string& name) {
  for (const char* s : kSubcommands)
    if (name == s) return true;
  return false;
}

RunRecord run(const std::string& subcommand, RunConfig cfg) {
  if (!is_subcommand(subcommand))
    fail(errc::config_invalid, "unknown subcommand '" + subcommand + "'");
  cfg.validate();

  std::filesystem::path out_dir = cfg.doc().at("out").get<std::string>();
  const char* cache_env = std::getenv("SELZETA_CACHE_DIR");
  std::filesystem::path cache_dir = cache_env ? std::filesystem::path(cache_env)
                                              : out_dir / ".selzeta-cache";
  RunStore store(out_dir, cache_dir);
  std::string key = RunStore::cache_key(subcommand, cfg);

  bool no_cache = cfg.doc().at("no_cache").get<bool>();
  if (!no_cache) {
    if (auto hit = store.cache_lookup(key)) return *hit;
  }

  auto t0 = std::chrono::steady_clock::now();
  Pipeline pipe{cfg.doc(), load_group(cfg.doc()), {}};
  if (subcommand == "validate") pipe.do_validate();
  else if (subcommand == "dim") pipe.do_dim();
  else if (subcommand == "pressure") pipe.do_pressure();
  else if (subcommand == "lengths") pipe.do_lengths();
  else if (subcommand == "cover") pipe.do_cover();
  else if (subcommand == "zeta") pipe.do_zeta();
  else if (subcommand == "grid") pipe.do_grid();
  else if (subcommand == "scan") pipe.do_scan();
  else if (subcommand == "count") pipe.do_count();
  else if (subcommand == "tau") pipe.do_tau();
  else if (subcommand == "weyl") pipe.do_weyl();
  else if (subcommand == "report") pipe.do_report();
  auto t1 = std::chrono::steady_clock::now();

  RunRecord rec;
  rec.subcommand = subcommand;
  rec.config_hash = cfg.hash();
  rec.version = kVersion;
  rec.config = cfg.doc();
  rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  for (const auto& [name, content] : pipe.outputs) {
    write_file(out_dir / name, content);
    rec.outputs.push_back({name, hash_hex(content)});
  }
  write_file(out_dir / (subcommand + "-record.json"), rec.to_json().dump(2) + "\n");
  if (!no_cache) store.cache_store(key, rec);
  return rec;
}

}  // namespace selzeta::cli
