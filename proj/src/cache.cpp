#include "kostka/cache.hpp"

#include "kostka/multiplicity.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <fstream>
#include <random>
#include <unistd.h>

namespace kostka {

using nlohmann::json;

MultiplicityCache::MultiplicityCache(std::filesystem::path file) : file_(std::move(file)) {
  std::error_code ec;
  if (file_->has_parent_path()) std::filesystem::create_directories(file_->parent_path(), ec);
  std::ifstream in(*file_);
  if (!in) return;  // empty cache
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto rec = decode_record(line);
    if (!rec) {
      ++stats_.skipped_lines;
      continue;
    }
    store_.insert_or_assign(std::move(rec->first), std::move(rec->second));
  }
}

std::string MultiplicityCache::encode_record(const CacheKey& key, const BigInt& mult) {
  json j = {{"format_version", kCacheFormatVersion},
            {"type", std::string(1, static_cast<char>(key.type.family))},
            {"rank", key.type.rank},
            {"lambda", key.lambda.coords},
            {"mu", key.mu.coords},
            {"mult", mult.get_str()}};
  return j.dump();
}

std::optional<std::pair<CacheKey, BigInt>> MultiplicityCache::decode_record(const std::string& line) {
  try {
    json j = json::parse(line);
    if (j.at("format_version").get<int>() != kCacheFormatVersion) return std::nullopt;
    auto fam = j.at("type").get<std::string>();
    if (fam.size() != 1) return std::nullopt;
    CacheKey key;
    key.type = SimpleType::make(static_cast<Family>(fam[0]), j.at("rank").get<int>());
    key.lambda = WeightVec(j.at("lambda").get<std::vector<std::int64_t>>());
    key.mu = WeightVec(j.at("mu").get<std::vector<std::int64_t>>());
    if (static_cast<int>(key.lambda.size()) != key.type.rank ||
        static_cast<int>(key.mu.size()) != key.type.rank) {
      return std::nullopt;
    }
    BigInt mult = parse_bigint(j.at("mult").get<std::string>());
    if (mult < 0) return std::nullopt;
    return std::make_pair(std::move(key), std::move(mult));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<BigInt> MultiplicityCache::lookup(const SimpleType& type, const WeightVec& lambda,
                                                const WeightVec& mu) {
  CacheKey key{type, lambda, mu};
  std::optional<BigInt> hit;
  bool audit = false;
  {
    std::unique_lock lock(mutex_);
    auto it = store_.find(key);
    if (it == store_.end()) {
      ++stats_.misses;
      return std::nullopt;
    }
    ++stats_.hits;
    hit = it->second;
    if (audit_rate_ > 0) {
      std::minstd_rand rng(audit_state_++);
      audit = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < audit_rate_;
    }
  }
  if (audit) {
    RootSystem rs(type);
    BigInt fresh = weight_multiplicity(rs, lambda, mu, nullptr);
    if (fresh != *hit) {
      std::unique_lock lock(mutex_);
      ++audit_mismatches_;
      warnings_.push_back("cache audit mismatch for " + type.name() + " " + lambda.str() + " " +
                          mu.str() + ": cached " + hit->get_str() + ", fresh " + fresh.get_str());
      return fresh;
    }
  }
  return hit;
}

void MultiplicityCache::store(const SimpleType& type, const WeightVec& lambda, const WeightVec& mu,
                              const BigInt& mult) {
  CacheKey key{type, lambda, mu};
  {
    std::unique_lock lock(mutex_);
    if (!store_.insert_or_assign(key, mult).second) return;
    ++stats_.stored;
  }
  if (file_) append(encode_record(key, mult) + "\n");
}

void MultiplicityCache::append(const std::string& line) {
  std::lock_guard guard(write_mutex_);
  int fd = ::open(file_->c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) {
    warn("cannot open cache file " + file_->string() + ": " + std::strerror(errno));
    return;
  }
  ssize_t written = ::write(fd, line.data(), line.size());
  if (written != static_cast<ssize_t>(line.size())) {
    warn("short write to cache file " + file_->string());
  }
  ::close(fd);
}

void MultiplicityCache::warn(std::string msg) {
  std::unique_lock lock(mutex_);
  ++stats_.write_failures;
  warnings_.push_back(std::move(msg));
}

void MultiplicityCache::set_audit_rate(double rate, unsigned seed) {
  std::unique_lock lock(mutex_);
  audit_rate_ = rate;
  audit_state_ = seed;
}

std::size_t MultiplicityCache::audit_mismatches() const {
  std::shared_lock lock(mutex_);
  return audit_mismatches_;
}

std::vector<std::pair<CacheKey, BigInt>> MultiplicityCache::entries() const {
  std::shared_lock lock(mutex_);
  return {store_.begin(), store_.end()};
}

CacheStats MultiplicityCache::stats() const {
  std::shared_lock lock(mutex_);
  CacheStats s = stats_;
  s.entries = store_.size();
  return s;
}

void MultiplicityCache::clear() {
  std::unique_lock lock(mutex_);
  store_.clear();
  if (file_) {
    std::error_code ec;
    std::filesystem::remove(*file_, ec);
  }
}

std::vector<std::string> MultiplicityCache::warnings() const {
  std::shared_lock lock(mutex_);
  return warnings_;
}

std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("KOSTKA_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "kostka";
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "kostka";
  }
  return std::filesystem::temp_directory_path() / "kostka-cache";
}

}  // namespace kostka
