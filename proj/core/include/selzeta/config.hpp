#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace selzeta::cli {

std::uint64_t fnv1a64(std::string_view data);
std::string hash_hex(std::string_view data);

/// Merged run configuration. Precedence: defaults, then command-line flags,
/// then the config file. The canonical form (sorted keys, no whitespace)
/// hashes to the run key used by the cache.
class RunConfig {
 public:
  static RunConfig defaults();

  /// Deep merge: overlay values win, objects merge recursively.
  void merge(const nlohmann::json& overlay);

  /// Schema check: known keys, expected types, basic ranges. Throws
  /// ConfigInvalid naming the offending path.
  void validate() const;

  std::string canonical() const { return doc_.dump(); }
  std::string hash() const { return hash_hex(canonical()); }

  const nlohmann::json& doc() const { return doc_; }
  nlohmann::json& doc() { return doc_; }

 private:
  nlohmann::json doc_;
};

}  // namespace selzeta::cli
