// On-disk result cache: one JSON object per line in <dir>/results.jsonl.

#ifndef HOAIRY_TOOLS_RESULT_CACHE_HPP_
#define HOAIRY_TOOLS_RESULT_CACHE_HPP_

#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace hoairy::cli {

/// Bumped whenever an algorithm change alters cached numbers.
inline constexpr const char* kCodeVersion = "hoairy-0.1.0/1";

struct CacheEntry {
  std::string key;
  std::string op;
  nlohmann::json inputs;
  std::string version;
  nlohmann::json payload;
  std::string created_at;
};

nlohmann::json to_json(const CacheEntry& e);
CacheEntry cache_entry_from_json(const nlohmann::json& j);

/// FNV-1a 64 of op, canonical inputs and version, as 16 hex digits.
std::string cache_key(const std::string& op, const nlohmann::json& inputs, const std::string& version = kCodeVersion);

/// Doubles in payloads: finite values as numbers, nan/inf as strings.
nlohmann::json encode_double(double v);
double decode_double(const nlohmann::json& j);

class ResultCache {
 public:
  /// An empty directory disables the cache.
  explicit ResultCache(std::string directory);

  bool enabled() const { return !path_.empty(); }
  const std::string& path() const { return path_; }
  std::size_t size() const;

  std::optional<nlohmann::json> get(const std::string& op, const nlohmann::json& inputs) const;
  void put(const std::string& op, const nlohmann::json& inputs, nlohmann::json payload);

  /// Merges with the file on disk and replaces it via temp-file rename.
  void flush();

 private:
  void load_file(std::unordered_map<std::string, CacheEntry>& into) const;

  std::string path_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, CacheEntry> entries_;
  bool dirty_ = false;
};

}  // namespace hoairy::cli

#endif  // HOAIRY_TOOLS_RESULT_CACHE_HPP_
