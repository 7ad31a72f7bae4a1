#include "selzeta/store.hpp"

#include <fstream>
#include <sstream>

#include "selzeta/errors.hpp"
#include "selzeta/version.hpp"

namespace selzeta::cli {

nlohmann::json RunRecord::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["config_hash"] = config_hash;
  j["version"] = version;
  j["config"] = config;
  j["outputs"] = nlohmann::json::array();
  for (const OutputFile& f : outputs) j["outputs"].push_back({{"name", f.name}, {"hash", f.hash}});
  j["wall_ms"] = wall_ms;
  j["from_cache"] = from_cache;
  return j;
}

RunRecord RunRecord::from_json(const nlohmann::json& j) {
  RunRecord r;
  r.subcommand = j.at("subcommand").get<std::string>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.config = j.at("config");
  for (const auto& f : j.at("outputs"))
    r.outputs.push_back({f.at("name").get<std::string>(), f.at("hash").get<std::string>()});
  r.wall_ms = j.value("wall_ms", 0.0);
  r.from_cache = j.value("from_cache", false);
  return r;
}

std::string file_hash(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return hash_hex(ss.str());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io_error, "cannot write " + path.string());
  out << content;
}

RunStore::RunStore(std::filesystem::path out_dir, std::filesystem::path cache_dir)
    : out_dir_(std::move(out_dir)), cache_dir_(std::move(cache_dir)) {}

std::string RunStore::cache_key(const std::string& subcommand, const RunConfig& cfg) {
  return hash_hex(subcommand + "\n" + cfg.canonical());
}

std::optional<RunRecord> RunStore::cache_lookup(const std::string& key) const {
  std::filesystem::path rec_path = cache_dir_ / (key + ".json");
  if (!std::filesystem::exists(rec_path)) return std::nullopt;
  RunRecord rec;
  try {
    std::ifstream in(rec_path);
    nlohmann::json j;
    in >> j;
    rec = RunRecord::from_json(j);
  } catch (const std::exception&) {
    std::filesystem::remove(rec_path);
    return std::nullopt;
  }
  for (const OutputFile& f : rec.outputs) {
    std::filesystem::path p = out_dir_ / f.name;
    if (!std::filesystem::exists(p) || file_hash(p) != f.hash) {
      // Tampered or missing output: evict so the caller recomputes.
      std::filesystem::remove(rec_path);
      return std::nullopt;
    }
  }
  rec.from_cache = true;
  return rec;
}

void RunStore::cache_store(const std::string& key, const RunRecord& record) const {
  std::filesystem::create_directories(cache_dir_);
  write_file(cache_dir_ / (key + ".json"), record.to_json().dump(2) + "\n");
}

}  // namespace selzeta::cli
