#pragma once

// Independent reference computations used to check the engine.

#include "kostka/numeric.hpp"
#include "kostka/rootsystem.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using kostka::BigInt;
using kostka::RootSystem;
using kostka::WeightVec;

// s_i on fundamental-weight coordinates, straight from the Cartan matrix.
inline WeightVec reflect(const std::vector<std::vector<int>>& a, WeightVec w, int i) {
  const std::int64_t s = w[i];
  for (std::size_t j = 0; j < w.size(); ++j) w[j] -= s * a[j][i];
  return w;
}

struct SignedElement {
  WeightVec image;  // w(lambda + rho)
  int sign = 1;
};

// Enumerates W through its free action on rho, carrying w(lambda + rho).
inline std::vector<SignedElement> weyl_images(const RootSystem& rs, const WeightVec& lambda) {
  const auto a = kostka::cartan_matrix(rs.type());
  const int n = rs.rank();
  WeightVec rho(std::vector<std::int64_t>(n, 1));
  std::map<WeightVec, SignedElement> seen;
  std::vector<std::pair<WeightVec, SignedElement>> frontier{{rho, {lambda + rho, 1}}};
  seen[rho] = {lambda + rho, 1};
  while (!frontier.empty()) {
    std::vector<std::pair<WeightVec, SignedElement>> next;
    for (const auto& [wr, el] : frontier) {
      for (int i = 0; i < n; ++i) {
        WeightVec r2 = reflect(a, wr, i);
        if (seen.count(r2)) continue;
        SignedElement e2{reflect(a, el.image, i), -el.sign};
        seen[r2] = e2;
        next.emplace_back(r2, e2);
      }
    }
    frontier = std::move(next);
  }
  std::vector<SignedElement> out;
  for (auto& [k, v] : seen) out.push_back(v);
  return out;
}

// Kostant partition function: ways to write gamma (simple-root coordinates)
// as a sum of positive roots.
class PartitionFunction {
 public:
  explicit PartitionFunction(const RootSystem& rs) : roots_(rs.positive_roots()) {}

  BigInt operator()(const std::vector<std::int64_t>& gamma) { return count(gamma, 0); }

 private:
  BigInt count(const std::vector<std::int64_t>& g, std::size_t t) {
    for (auto x : g)
      if (x < 0) return 0;
    if (t == roots_.size()) {
      for (auto x : g)
        if (x != 0) return 0;
      return 1;
    }
    auto key = std::make_pair(t, g);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigInt total = 0;
    std::vector<std::int64_t> cur = g;
    while (true) {
      bool ok = true;
      for (auto x : cur)
        if (x < 0) ok = false;
      if (!ok) break;
      total += count(cur, t + 1);
      for (std::size_t i = 0; i < cur.size(); ++i) cur[i] -= roots_[t][i];
    }
    memo_[key] = total;
    return total;
  }

  std::vector<std::vector<int>> roots_;
  std::map<std::pair<std::size_t, std::vector<std::int64_t>>, BigInt> memo_;
};

// Kostant's multiplicity formula; mu need not be dominant.
class Kostant {
 public:
  Kostant(const RootSystem& rs, const WeightVec& lambda)
      : rs_(rs), images_(weyl_images(rs, lambda)), partitions_(rs) {}

  BigInt multiplicity(const WeightVec& mu) {
    WeightVec shifted = mu;
    for (auto& x : shifted.coords) x += 1;
    BigInt total = 0;
    for (const auto& el : images_) {
      auto gamma = rs_.to_root_coords(el.image - shifted);
      if (!gamma.is_integral()) return 0;
      BigInt p = partitions_(gamma.as_integers());
      if (el.sign > 0) total += p;
      else total -= p;
    }
    return total;
  }

  std::size_t weyl_order() const { return images_.size(); }

 private:
  const RootSystem& rs_;
  std::vector<SignedElement> images_;
  PartitionFunction partitions_;
};

// Number of semistandard tableaux of shape `shape` and content `content`,
// peeling off horizontal strips for the largest entry.
inline BigInt ssyt_count(std::vector<std::int64_t> shape, std::vector<std::int64_t> content) {
  while (!shape.empty() && shape.back() == 0) shape.pop_back();
  if (content.empty()) return shape.empty() ? 1 : 0;
  const std::int64_t last = content.back();
  content.pop_back();
  BigInt total = 0;
  // Choose removals r_i from each row with 0 <= r_i <= shape_i - shape_{i+1}.
  std::vector<std::int64_t> inner = shape;
  auto recurse = [&](auto&& self, std::size_t row, std::int64_t left) -> void {
    if (row == shape.size()) {
      if (left == 0) total += ssyt_count(inner, content);
      return;
    }
    const std::int64_t below = row + 1 < shape.size() ? shape[row + 1] : 0;
    for (std::int64_t r = 0; r <= std::min(left, shape[row] - below); ++r) {
      inner[row] = shape[row] - r;
      self(self, row + 1, left - r);
    }
    inner[row] = shape[row];
  };
  recurse(recurse, 0, last);
  return total;
}

// Type A_{n} weight to a partition with n + 1 parts, padded by `extra` full columns.
inline std::vector<std::int64_t> to_partition(const WeightVec& w, std::int64_t extra = 0) {
  const std::size_t n = w.size();
  std::vector<std::int64_t> p(n + 1, extra);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) p[i] += w[j];
  return p;
}

// K_{lambda, mu} for type A via tableaux, mu dominant.
inline BigInt type_a_kostka(const WeightVec& lambda, const WeightVec& mu) {
  auto lp = to_partition(lambda);
  auto mp = to_partition(mu);
  std::int64_t sl = 0, sm = 0;
  for (auto x : lp) sl += x;
  for (auto x : mp) sm += x;
  const auto parts = static_cast<std::int64_t>(lp.size());
  if (sl < sm || (sl - sm) % parts != 0) return 0;
  return ssyt_count(lp, to_partition(mu, (sl - sm) / parts));
}

// Seeded generator for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  WeightVec dominant(int rank, std::int64_t max_coord) {
    WeightVec w = WeightVec::zero(rank);
    for (auto& x : w.coords) x = uniform(0, max_coord);
    return w;
  }
  WeightVec any(int rank, std::int64_t bound) {
    WeightVec w = WeightVec::zero(rank);
    for (auto& x : w.coords) x = uniform(-bound, bound);
    return w;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
