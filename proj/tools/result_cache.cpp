#include "result_cache.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <unistd.h>

#include "hoairy/errors.hpp"

namespace hoairy::cli {

namespace fs = std::filesystem;

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

nlohmann::json to_json(const CacheEntry& e) {
  return {{"key", e.key},         {"op", e.op},         {"inputs", e.inputs},
          {"version", e.version}, {"payload", e.payload}, {"created_at", e.created_at}};
}

CacheEntry cache_entry_from_json(const nlohmann::json& j) {
  return {j.at("key").get<std::string>(), j.at("op").get<std::string>(),     j.at("inputs"),
          j.at("version").get<std::string>(), j.at("payload"), j.at("created_at").get<std::string>()};
}

std::string cache_key(const std::string& op, const nlohmann::json& inputs, const std::string& version) {
  const std::string text = op + '\n' + inputs.dump() + '\n' + version;
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json encode_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode_double(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  throw DomainError("cache: bad encoded double '" + s + "'");
}

ResultCache::ResultCache(std::string directory) {
  if (directory.empty()) return;
  fs::create_directories(directory);
  path_ = (fs::path(directory) / "results.jsonl").string();
  load_file(entries_);
}

void ResultCache::load_file(std::unordered_map<std::string, CacheEntry>& into) const {
  std::ifstream in(path_);
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    try {
      CacheEntry e = cache_entry_from_json(nlohmann::json::parse(line));
      if (e.version != kCodeVersion) continue;
      into.emplace(e.key, std::move(e));
    } catch (const std::exception&) {
      // A torn or foreign line; skip it.
    }
  }
}

std::size_t ResultCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::optional<nlohmann::json> ResultCache::get(const std::string& op, const nlohmann::json& inputs) const {
  if (!enabled()) return std::nullopt;
  const std::string key = cache_key(op, inputs);
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end() || it->second.op != op || it->second.inputs != inputs) return std::nullopt;
  return it->second.payload;
}

void ResultCache::put(const std::string& op, const nlohmann::json& inputs, nlohmann::json payload) {
  if (!enabled()) return;
  CacheEntry e{cache_key(op, inputs), op, inputs, kCodeVersion, std::move(payload), utc_now()};
  std::unique_lock lock(mutex_);
  const auto it = entries_.find(e.key);
  if (it != entries_.end()) {
    if (it->second.op != op || it->second.inputs != inputs)
      throw InternalConsistencyError("cache: key collision between different inputs");
    return;
  }
  entries_.emplace(e.key, std::move(e));
  dirty_ = true;
}

void ResultCache::flush() {
  if (!enabled()) return;
  std::unique_lock lock(mutex_);
  if (!dirty_) return;
  std::unordered_map<std::string, CacheEntry> merged;
  load_file(merged);
  for (const auto& [k, e] : entries_) merged.insert_or_assign(k, e);
  const std::string tmp = path_ + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw EvaluationError("cache: cannot write " + tmp);
    for (const auto& [k, e] : merged) out << to_json(e).dump() << '\n';
    if (!out) throw EvaluationError("cache: write failed for " + tmp);
  }
  fs::rename(tmp, path_);
  entries_ = std::move(merged);
  dirty_ = false;
}

}  // namespace hoairy::cli
