// Command-line front end: subcommands map one-to-one onto the library
// pipelines in selzeta::cli::run. Option precedence is defaults, then flags,
// then --config file (the file wins), and the merged document is echoed into
// the run record next to the outputs.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "selzeta/errors.hpp"
#include "selzeta/runner.hpp"
#include "selzeta/version.hpp"

namespace {

struct CommonFlags {
  std::string group, out, config_path;
  int threads = 0;
  bool no_cache = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--group", f.group, "fixture string or file:<path>");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--threads", f.threads, "worker thread cap");
  cmd->add_flag("--no-cache", f.no_cache, "bypass the run cache");
  cmd->add_option("--config", f.config_path, "JSON config file (overrides flags)");
}

nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) selzeta::fail(selzeta::errc::io_error, "cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    selzeta::fail(selzeta::errc::config_invalid, std::string("config parse: ") + e.what());
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selberg zeta, pressure, dimension and resonance toolkit for "
               "Fuchsian Schottky groups"};
  app.set_version_flag("--version", selzeta::kVersion);
  app.require_subcommand(1);

  CommonFlags common;
  nlohmann::json flags = nlohmann::json::object();

  struct SubSpec {
    CLI::App* cmd = nullptr;
  };
  std::map<std::string, SubSpec> subs;

  auto opt = [&flags](const std::string& section, const std::string& key) {
    return [&flags, section, key](double v) { flags[section][key] = v; };
  };
  auto iopt = [&flags](const std::string& section, const std::string& key) {
    return [&flags, section, key](int v) { flags[section][key] = v; };
  };
  auto vopt = [&flags](const std::string& section, const std::string& key) {
    return [&flags, section, key](const std::vector<double>& v) { flags[section][key] = v; };
  };

  for (const char* name : selzeta::cli::kSubcommands) {
    CLI::App* cmd = app.add_subcommand(name, "");
    subs[name] = {cmd};
    add_common(cmd, common);
    cmd->add_option_function<int>("--K", iopt("operator", "K"), "basis truncation degree");
    cmd->add_option_function<int>("--refined-K", iopt("operator", "refined_K"),
                                  "truncation degree on refined covers");
    std::string n = name;
    if (n == "dim" || n == "count" || n == "weyl" || n == "tau" || n == "report")
      cmd->add_option_function<double>("--tol", opt("dim", "tol"), "pressure residual bound");
    if (n == "pressure") {
      cmd->add_option_function<std::vector<double>>("--sigmas", vopt("pressure", "sigmas"))
          ->delimiter(',');
      cmd->add_option_function<int>("--n-orbit", iopt("pressure", "n_orbit"));
    }
    if (n == "lengths") cmd->add_option_function<int>("--n-max", iopt("lengths", "n_max"));
    if (n == "cover")
      cmd->add_option_function<std::vector<double>>("--h", vopt("cover", "h"))->delimiter(',');
    if (n == "zeta") {
      cmd->add_option_function<double>("--re", opt("zeta", "re"));
      cmd->add_option_function<double>("--im", opt("zeta", "im"));
      cmd->add_option_function<std::string>(
          "--method", [&flags](const std::string& m) { flags["zeta"]["method"] = m; },
          "det | trace | euler");
      cmd->add_option_function<int>("--q-max", iopt("zeta", "q_max"));
      cmd->add_option_function<double>("--cutoff", opt("zeta", "cutoff"));
      cmd->add_option_function<int>("--n", iopt("zeta", "n"), "operator power for det");
    }
    if (n == "grid" || n == "scan" || n == "report") {
      const std::string sec = (n == "grid") ? "grid" : "scan";
      cmd->add_option_function<double>("--re-lo", opt(sec, "re_lo"));
      cmd->add_option_function<double>("--re-hi", opt(sec, "re_hi"));
      cmd->add_option_function<double>("--im-lo", opt(sec, "im_lo"));
      cmd->add_option_function<double>("--im-hi", opt(sec, "im_hi"));
    }
    if (n == "grid") {
      cmd->add_option_function<double>("--dsig", opt("grid", "dsig"));
      cmd->add_option_function<double>("--dt", opt("grid", "dt"));
    }
    if (n == "scan") {
      cmd->add_option_function<double>("--tol", opt("scan", "tol"));
      cmd->add_option_function<double>("--resolve", opt("scan", "resolve"));
    }
    if (n == "count" || n == "weyl" || n == "report") {
      const std::string sec = (n == "weyl") ? "weyl" : "count";
      cmd->add_option_function<std::vector<double>>("--sigmas", vopt(sec, "sigmas"))
          ->delimiter(',');
      cmd->add_option_function<std::vector<double>>("--Ts", vopt(sec, "Ts"))->delimiter(',');
    }
    if (n == "tau") {
      cmd->add_option_function<double>("--nu", opt("tau", "nu"));
      cmd->add_option_function<std::vector<double>>("--sigmas", vopt("tau", "sigmas"))
          ->delimiter(',');
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string sub;
  for (const auto& [name, spec] : subs)
    if (spec.cmd->parsed()) sub = name;

  try {
    selzeta::cli::RunConfig cfg = selzeta::cli::RunConfig::defaults();
    if (!common.group.empty()) flags["group"] = common.group;
    if (!common.out.empty()) flags["out"] = common.out;
    if (common.threads > 0) flags["threads"] = common.threads;
    if (common.no_cache) flags["no_cache"] = true;
    cfg.merge(flags);
    if (!common.config_path.empty()) cfg.merge(load_config_file(common.config_path));

    selzeta::cli::RunRecord rec = selzeta::cli::run(sub, cfg);
    std::printf("%s: %s (%s%.1f ms)\n", sub.c_str(),
                rec.outputs.empty() ? "no outputs" : rec.outputs.front().name.c_str(),
                rec.from_cache ? "cached, " : "", rec.wall_ms);
    for (size_t i = 1; i < rec.outputs.size(); ++i)
      std::printf("%s: %s\n", sub.c_str(), rec.outputs[i].name.c_str());
    return 0;
  } catch (const selzeta::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == selzeta::errc::config_invalid ? 2 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
