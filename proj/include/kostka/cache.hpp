#pragma once

#include "kostka/numeric.hpp"
#include "kostka/rootsystem.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace kostka {

/// Bumped whenever the record layout or the engine conventions change;
/// records carrying another version are ignored on load.
inline constexpr int kCacheFormatVersion = 1;

struct CacheKey {
  SimpleType type;
  WeightVec lambda;
  WeightVec mu;  // dominant
  friend auto operator<=>(const CacheKey&, const CacheKey&) = default;
};

struct CacheStats {
  std::size_t entries = 0;
  std::size_t hits = 0;
  std::size_t misses = 0;
  std::size_t stored = 0;
  std::size_t skipped_lines = 0;  // malformed or stale-version records seen on load
  std::size_t write_failures = 0;
};

/// Persistent store of weight multiplicities keyed by (type, lambda, dominant mu).
///
/// Backed by an append-only file of newline-delimited JSON records; each
/// record goes out in a single write(2) on an O_APPEND descriptor. Torn or
/// foreign lines are skipped on load. Readers share a lock, writers serialize.
class MultiplicityCache {
 public:
  /// In-memory only.
  MultiplicityCache() = default;
  /// Loads `file` if present; later stores append to it. Missing parent
  /// directories are created. I/O failures degrade to in-memory operation.
  explicit MultiplicityCache(std::filesystem::path file);

  MultiplicityCache(const MultiplicityCache&) = delete;
  MultiplicityCache& operator=(const MultiplicityCache&) = delete;

  std::optional<BigInt> lookup(const SimpleType& type, const WeightVec& lambda, const WeightVec& mu);
  void store(const SimpleType& type, const WeightVec& lambda, const WeightVec& mu, const BigInt& mult);

  /// Fraction of hits that are recomputed and compared (0 disables).
  void set_audit_rate(double rate, unsigned seed = 0x5eed);
  std::size_t audit_mismatches() const;

  std::vector<std::pair<CacheKey, BigInt>> entries() const;
  CacheStats stats() const;
  void clear();

  const std::optional<std::filesystem::path>& file() const { return file_; }
  /// Warnings produced by degraded I/O (for the CLI to surface).
  std::vector<std::string> warnings() const;

  static std::string encode_record(const CacheKey& key, const BigInt& mult);
  /// nullopt for malformed or stale-version lines.
  static std::optional<std::pair<CacheKey, BigInt>> decode_record(const std::string& line);

 private:
  void append(const std::string& line);
  void warn(std::string msg);

  mutable std::shared_mutex mutex_;
  std::map<CacheKey, BigInt> store_;
  std::optional<std::filesystem::path> file_;
  CacheStats stats_;
  std::vector<std::string> warnings_;
  double audit_rate_ = 0.0;
  unsigned audit_state_ = 0;
  std::size_t audit_mismatches_ = 0;
  std::mutex write_mutex_;
};

/// Flag value, else $KOSTKA_CACHE, else $XDG_CACHE_HOME/kostka, else
/// ~/.cache/kostka, else a directory under the system temp path.
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag);

inline std::filesystem::path cache_file_in(const std::filesystem::path& dir) {
  return dir / "multiplicities.ndjson";
}

}  // namespace kostka
