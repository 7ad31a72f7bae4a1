#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "selzeta/config.hpp"

namespace selzeta::cli {

struct OutputFile {
  std::string name;  // relative to the output directory
  std::string hash;  // fnv1a64 of the file bytes, hex
};

/// Provenance of one run: what was asked, what was produced, how long it took.
/// wall_ms is informational and never part of any hash.
struct RunRecord {
  std::string subcommand;
  std::string config_hash;
  std::string version;
  nlohmann::json config;  // merged document
  std::vector<OutputFile> outputs;
  double wall_ms = 0;
  bool from_cache = false;

  nlohmann::json to_json() const;
  static RunRecord from_json(const nlohmann::json& j);
};

std::string file_hash(const std::filesystem::path& path);

/// Write with deterministic bytes (LF endings are the caller's concern;
/// this is a plain binary write plus directory creation).
void write_file(const std::filesystem::path& path, const std::string& content);

/// Record cache keyed by subcommand + canonical config hash. A hit is only
/// served when every recorded output file still matches its hash; corrupt
/// records are evicted so the caller recomputes.
class RunStore {
 public:
  RunStore(std::filesystem::path out_dir, std::filesystem::path cache_dir);

  const std::filesystem::path& out_dir() const { return out_dir_; }

  std::optional<RunRecord> cache_lookup(const std::string& key) const;
  void cache_store(const std::string& key, const RunRecord& record) const;

  static std::string cache_key(const std::string& subcommand, const RunConfig& cfg);

 private:
  std::filesystem::path out_dir_;
  std::filesystem::path cache_dir_;
};

}  // namespace selzeta::cli
