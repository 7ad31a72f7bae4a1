#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "selzeta/errors.hpp"
#include "selzeta/runner.hpp"

using namespace selzeta;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("selzeta-test-" + std::to_string(reinterpret_cast<uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

cli::RunConfig base_config(const fs::path& out) {
  cli::RunConfig cfg = cli::RunConfig::defaults();
  cfg.merge({{"group", "cylinder:t=1"}, {"out", out.string()}, {"operator", {{"K", 16}}}});
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config canonical form and hash are key-order independent") {
  cli::RunConfig a = cli::RunConfig::defaults();
  a.merge({{"threads", 2}, {"group", "cylinder:t=1"}});
  cli::RunConfig b = cli::RunConfig::defaults();
  b.merge({{"group", "cylinder:t=1"}, {"threads", 2}});
  CHECK(a.canonical() == b.canonical());
  CHECK(a.hash() == b.hash());
  cli::RunConfig c = cli::RunConfig::defaults();
  c.merge({{"group", "cylinder:t=1"}, {"threads", 2}, {"operator", {{"K", 41}}}});
  CHECK(c.hash() != a.hash());
}

TEST_CASE("config validation points at the offending path") {
  cli::RunConfig cfg = cli::RunConfig::defaults();
  cfg.merge({{"operator", {{"K", 1}}}});
  try {
    cfg.validate();
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::config_invalid);
    CHECK(std::string(e.what()).find("operator.K") != std::string::npos);
  }
  cli::RunConfig cfg2 = cli::RunConfig::defaults();
  cfg2.merge({{"mystery", 1}});
  CHECK_THROWS_AS(cfg2.validate(), Error);
}

TEST_CASE("dim run writes schema-conforming JSON and re-runs hit the cache") {
  TempDir tmp;
  cli::RunConfig cfg = base_config(tmp.path / "out");
  cli::RunRecord first = cli::run("dim", cfg);
  CHECK(!first.from_cache);
  REQUIRE(first.outputs.size() == 1);
  CHECK(first.outputs[0].name == "dim.json");
  auto j = nlohmann::json::parse(slurp(tmp.path / "out" / "dim.json"));
  CHECK(j.contains("delta"));
  CHECK(j.contains("residual"));
  CHECK(j.contains("K"));
  CHECK(j.at("delta").get<double>() == 0.0);

  cli::RunRecord second = cli::run("dim", cfg);
  CHECK(second.from_cache);
  CHECK(second.outputs[0].hash == first.outputs[0].hash);
}

TEST_CASE("config differing in K misses the cache") {
  TempDir tmp;
  cli::RunConfig cfg = base_config(tmp.path / "out");
  cli::run("dim", cfg);
  cli::RunConfig cfg2 = base_config(tmp.path / "out");
  cfg2.merge({{"operator", {{"K", 18}}}});
  cli::RunRecord r = cli::run("dim", cfg2);
  CHECK(!r.from_cache);
}

TEST_CASE("tampered output evicts the record and recomputes") {
  TempDir tmp;
  cli::RunConfig cfg = base_config(tmp.path / "out");
  cli::RunRecord first = cli::run("dim", cfg);
  {
    std::ofstream out(tmp.path / "out" / "dim.json", std::ios::trunc);
    out << "tampered\n";
  }
  cli::RunRecord again = cli::run("dim", cfg);
  CHECK(!again.from_cache);
  CHECK(again.outputs[0].hash == first.outputs[0].hash);
  CHECK(slurp(tmp.path / "out" / "dim.json").find("delta") != std::string::npos);
}

TEST_CASE("no_cache bypasses the cache both ways") {
  TempDir tmp;
  cli::RunConfig cfg = base_config(tmp.path / "out");
  cfg.merge({{"no_cache", true}});
  cli::RunRecord a = cli::run("dim", cfg);
  cli::RunRecord b = cli::run("dim", cfg);
  CHECK(!a.from_cache);
  CHECK(!b.from_cache);
  CHECK(a.outputs[0].hash == b.outputs[0].hash);
}

TEST_CASE("unknown subcommand is a usage error") {
  cli::RunConfig cfg = cli::RunConfig::defaults();
  try {
    cli::run("frobnicate", cfg);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == errc::config_invalid);
  }
}

TEST_CASE("determinism: identical runs produce identical bytes") {
  TempDir tmp;
  cli::RunConfig cfg1 = base_config(tmp.path / "a");
  cfg1.merge({{"no_cache", true}, {"lengths", {{"n_max", 4}}}});
  cli::RunConfig cfg2 = base_config(tmp.path / "b");
  cfg2.merge({{"no_cache", true}, {"lengths", {{"n_max", 4}}}});
  cli::run("lengths", cfg1);
  cli::run("lengths", cfg2);
  CHECK(slurp(tmp.path / "a" / "lengths.csv") == slurp(tmp.path / "b" / "lengths.csv"));

  // thread count must not change the bytes
  cli::RunConfig cfg8 = base_config(tmp.path / "c");
  cfg8.merge({{"no_cache", true}, {"threads", 8}, {"lengths", {{"n_max", 4}}}});
  cli::run("lengths", cfg8);
  CHECK(slurp(tmp.path / "a" / "lengths.csv") == slurp(tmp.path / "c" / "lengths.csv"));
}

TEST_CASE("validate run records margins; pressure csv has a header") {
  TempDir tmp;
  cli::RunConfig cfg = base_config(tmp.path / "out");
  cli::run("validate", cfg);
  auto j = nlohmann::json::parse(slurp(tmp.path / "out" / "validate.json"));
  CHECK(j.at("valid").get<bool>());
  CHECK(j.at("elementary").get<bool>());
  CHECK(j.at("disjointness_margins").size() == 1);

  cli::RunConfig pcfg = base_config(tmp.path / "out");
  pcfg.merge({{"pressure", {{"sigmas", {0.0, 0.5}}, {"n_orbit", 4}}}});
  cli::run("pressure", pcfg);
  std::string csv = slurp(tmp.path / "out" / "pressure.csv");
  CHECK(csv.rfind("sigma,p_eig,p_orbit,n,K\n", 0) == 0);
}
