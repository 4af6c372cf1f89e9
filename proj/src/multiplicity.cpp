#include "kostka/multiplicity.hpp"

#include "kostka/cache.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <type_traits>
#include <vector>

namespace kostka {

namespace {

constexpr int kMaxRank = 16;
// Keeps every weight reachable from lambda inside int32 after reflections.
constexpr std::int64_t kMaxCoordinate = 1 << 24;

using Coord = std::int32_t;

/// Freudenthal recursion over the dominant weights of V_lambda that lie above
/// a floor weight (or all of them when no floor is given).
///
/// Dominant weights are discovered by descending from lambda along positive
/// roots (the dominance order on dominant weights is generated by such steps)
/// and processed bucket by bucket in increasing height of lambda - nu, so every
/// weight that feeds the recursion of nu is final before nu is visited.
///
/// Rank is a template parameter so the inner loops unroll; Rank = 0 is the
/// runtime-rank fallback.
template <int Rank>
class FreudenthalPass {
  static constexpr int kWidth = Rank > 0 ? Rank : kMaxRank;
  using Vec = std::array<Coord, kWidth>;

 public:
  FreudenthalPass(const RootSystem& rs, const WeightVec& lambda, const std::vector<std::int64_t>* floor_gap,
                  const EngineLimits& limits)
      : rs_(rs), n_(Rank > 0 ? Rank : rs.rank()), limits_(limits) {
    if (Rank > 0 && rs.rank() != Rank) throw std::logic_error("rank dispatch mismatch");
    if (n_ > kMaxRank) throw std::invalid_argument("rank too large for the multiplicity engine");
    for (auto x : lambda.coords) {
      if (x < 0 || x > kMaxCoordinate) throw std::out_of_range("highest weight coordinate out of range");
    }
    lambda_ = to_vec(lambda);
    if (floor_gap) {
      has_floor_ = true;
      gap_.fill(0);
      for (int i = 0; i < n(); ++i) gap_[i] = static_cast<Coord>((*floor_gap)[i]);
    }
    const auto& sym = rs.symmetrizer();
    for (std::size_t t = 0; t < rs.positive_roots().size(); ++t) {
      Root r;
      r.weight.fill(0);
      r.coords.fill(0);
      for (int i = 0; i < n(); ++i) {
        r.weight[i] = static_cast<Coord>(rs.positive_roots_weight()[t][i]);
        r.coords[i] = static_cast<Coord>(rs.positive_roots()[t][i]);
        r.height += r.coords[i];
      }
      for (int i = 0; i < n(); ++i) r.norm += static_cast<std::int64_t>(r.coords[i]) * sym[i] * r.weight[i];
      roots_.push_back(r);
    }
    for (int i = 0; i < n(); ++i) {
      sym_[i] = sym[i];
      for (int j = 0; j < n(); ++j) cartan_col_[i][j] = static_cast<Coord>(rs.cartan()[j][i]);
    }
  }

  void run() {
    Vec zero{};
    insert(lambda_, zero);
    mult_[0] = 1;
    small_[0] = 1;
    for (std::size_t h = 0; h < buckets_.size(); ++h) {
      // buckets_ may grow while iterating; index access only.
      for (std::size_t b = 0; b < buckets_[h].size(); ++b) {
        std::uint32_t node = buckets_[h][b];
        if (node != 0) compute(node);
        expand(node);
      }
      buckets_[h].clear();
      buckets_[h].shrink_to_fit();
    }
  }

  std::size_t size() const { return mult_.size(); }

  const BigInt* find(const WeightVec& w) const {
    Vec v = to_vec(w);
    auto idx = lookup(v);
    return idx == kNone ? nullptr : &mult_[idx];
  }

  WeightVec weight(std::size_t node) const {
    WeightVec w = WeightVec::zero(n_);
    for (int i = 0; i < n(); ++i) w[i] = weights_[node * n() + i];
    return w;
  }
  const BigInt& multiplicity(std::size_t node) const { return mult_[node]; }

 private:
  struct Root {
    Vec weight;
    Vec coords;
    std::int64_t norm = 0;  // (alpha, alpha)
    int height = 0;
  };
  constexpr int n() const {
    if constexpr (Rank > 0) {
      return Rank;
    } else {
      return n_;
    }
  }

  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint64_t kBig = std::numeric_limits<std::uint64_t>::max();

  Vec to_vec(const WeightVec& w) const {
    Vec v{};
    for (int i = 0; i < n(); ++i) {
      if (w[i] > kMaxCoordinate || w[i] < -kMaxCoordinate) throw std::out_of_range("weight coordinate out of range");
      v[i] = static_cast<Coord>(w[i]);
    }
    return v;
  }

  std::uint64_t hash(const Vec& v) const {
    std::uint64_t h = 0x243F6A8885A308D3ull;
    for (int i = 0; i < n(); ++i) {
      h ^= static_cast<std::uint32_t>(v[i]);
      h *= 0x9E3779B97F4A7C15ull;
      h ^= h >> 29;
    }
    return h;
  }

  bool equals(std::uint32_t node, const Vec& v) const {
    const Coord* p = &weights_[static_cast<std::size_t>(node) * n()];
    for (int i = 0; i < n(); ++i)
      if (p[i] != v[i]) return false;
    return true;
  }

  std::uint32_t lookup(const Vec& v) const {
    if (table_.empty()) return kNone;
    std::size_t mask = table_.size() - 1;
    for (std::size_t pos = hash(v) & mask;; pos = (pos + 1) & mask) {
      std::uint32_t node = table_[pos];
      if (node == kNone) return kNone;
      if (equals(node, v)) return node;
    }
  }

  void grow() {
    std::size_t cap = table_.empty() ? 1024 : table_.size() * 2;
    table_.assign(cap, kNone);
    std::size_t mask = cap - 1;
    const std::size_t count = weights_.size() / n();
    for (std::size_t node = 0; node < count; ++node) {
      Vec v{};
      for (int i = 0; i < n(); ++i) v[i] = weights_[node * n() + i];
      std::size_t pos = hash(v) & mask;
      while (table_[pos] != kNone) pos = (pos + 1) & mask;
      table_[pos] = static_cast<std::uint32_t>(node);
    }
  }

  // Inserts a new dominant weight with depth vector c = lambda - v in root
  // coordinates, unless already present.
  void insert(const Vec& v, const Vec& depth) {
    const std::size_t count = weights_.size() / n();
    if ((count + 1) * 2 > table_.size()) grow();
    std::size_t mask = table_.size() - 1;
    std::size_t pos = hash(v) & mask;
    while (table_[pos] != kNone) {
      if (equals(table_[pos], v)) return;
      pos = (pos + 1) & mask;
    }
    if (count >= limits_.max_dominant_weights) {
      throw SizeGuardExceeded("more than " + std::to_string(limits_.max_dominant_weights) +
                              " dominant weights; raise the size guard");
    }
    table_[pos] = static_cast<std::uint32_t>(count);
    weights_.insert(weights_.end(), v.begin(), v.begin() + n());
    depths_.insert(depths_.end(), depth.begin(), depth.begin() + n());
    mult_.emplace_back();
    small_.push_back(kBig);
    int height = 0;
    for (int i = 0; i < n(); ++i) height += depth[i];
    if (static_cast<std::size_t>(height) >= buckets_.size()) buckets_.resize(height + 1);
    buckets_[height].push_back(static_cast<std::uint32_t>(count));
  }

  void expand(std::uint32_t node) {
    Vec v{}, c{};
    for (int i = 0; i < n(); ++i) {
      v[i] = weights_[static_cast<std::size_t>(node) * n() + i];
      c[i] = depths_[static_cast<std::size_t>(node) * n() + i];
    }
    for (const auto& r : roots_) {
      Vec child = v;
      bool dominant = true;
      for (int i = 0; i < n(); ++i) {
        child[i] -= r.weight[i];
        if (child[i] < 0) {
          dominant = false;
          break;
        }
      }
      if (!dominant) continue;
      Vec cd = c;
      bool inside = true;
      for (int i = 0; i < n(); ++i) {
        cd[i] += r.coords[i];
        if (has_floor_ && cd[i] > gap_[i]) inside = false;
      }
      if (inside) insert(child, cd);
    }
  }

  void to_dominant(Vec& w) const {
    while (true) {
      int i = 0;
      while (i < n() && w[i] >= 0) ++i;
      if (i == n()) return;
      const Coord s = w[i];
      const Coord* col = cartan_col_[i].data();
      for (int j = 0; j < n(); ++j) w[j] -= s * col[j];
    }
  }

  void compute(std::uint32_t node) {
    Vec v{}, c{};
    for (int i = 0; i < n(); ++i) {
      v[i] = weights_[static_cast<std::size_t>(node) * n() + i];
      c[i] = depths_[static_cast<std::size_t>(node) * n() + i];
    }
    // Accumulate in 128 bits while every term is small, switching to GMP
    // on the first large multiplicity.
    unsigned __int128 wide = 0;
    bool big = false;
    acc_ = 0;
    for (const auto& r : roots_) {
      std::int64_t base = 0;
      for (int i = 0; i < n(); ++i) base += static_cast<std::int64_t>(r.coords[i]) * sym_[i] * v[i];
      Vec cur = v;
      for (std::int64_t k = 1;; ++k) {
        for (int i = 0; i < n(); ++i) cur[i] += r.weight[i];
        Vec dom = cur;
        to_dominant(dom);
        std::uint32_t idx = lookup(dom);
        // alpha-strings through weights are unbroken.
        if (idx == kNone) break;
        std::uint64_t coef = static_cast<std::uint64_t>(base + k * r.norm);
        if (!big && small_[idx] != kBig && coef < (1ull << 32)) {
          wide += static_cast<unsigned __int128>(small_[idx]) * coef;
          if (wide >> 120) {
            big = true;
            set_from_wide(acc_, wide);
          }
          continue;
        }
        if (!big) {
          big = true;
          set_from_wide(acc_, wide);
        }
        mpz_addmul_ui(acc_.get_mpz_t(), mult_[idx].get_mpz_t(), coef);
      }
    }
    // ||lambda + rho||^2 - ||nu + rho||^2 = (lambda - nu, lambda + nu + 2 rho)
    std::int64_t denom = 0;
    for (int i = 0; i < n(); ++i) {
      denom += static_cast<std::int64_t>(c[i]) * sym_[i] *
               (static_cast<std::int64_t>(lambda_[i]) + v[i] + 2);
    }
    if (denom <= 0) throw std::logic_error("Freudenthal denominator is not positive");
    if (!big) {
      wide *= 2;
      const auto d = static_cast<unsigned __int128>(denom);
      if (wide % d != 0) throw std::logic_error("Freudenthal recursion produced a non-integer multiplicity");
      wide /= d;
      set_from_wide(mult_[node], wide);
      if (!(wide >> 62)) small_[node] = static_cast<std::uint64_t>(wide);
      return;
    }
    acc_ *= 2;
    if (!mpz_divisible_ui_p(acc_.get_mpz_t(), static_cast<unsigned long>(denom))) {
      throw std::logic_error("Freudenthal recursion produced a non-integer multiplicity");
    }
    mpz_divexact_ui(mult_[node].get_mpz_t(), acc_.get_mpz_t(), static_cast<unsigned long>(denom));
    if (mpz_sizeinbase(mult_[node].get_mpz_t(), 2) <= 62) small_[node] = mpz_get_ui(mult_[node].get_mpz_t());
  }

  static void set_from_wide(BigInt& out, unsigned __int128 x) {
    const auto hi = static_cast<unsigned long>(x >> 64);
    const auto lo = static_cast<unsigned long>(x);
    mpz_set_ui(out.get_mpz_t(), hi);
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 64);
    mpz_add_ui(out.get_mpz_t(), out.get_mpz_t(), lo);
  }

  const RootSystem& rs_;
  const int n_;
  EngineLimits limits_;
  Vec lambda_{};
  Vec gap_{};
  bool has_floor_ = false;
  std::array<std::int64_t, kWidth> sym_{};
  std::array<Vec, kWidth> cartan_col_{};
  std::vector<Root> roots_;

  std::vector<Coord> weights_;
  std::vector<Coord> depths_;
  std::vector<std::uint32_t> table_;
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::vector<BigInt> mult_;
  // Copy of mult_ for values below 2^62, kBig otherwise.
  std::vector<std::uint64_t> small_;
  BigInt acc_;
};

template <typename Fn>
decltype(auto) with_rank(int rank, Fn&& fn) {
  switch (rank) {
    case 1: return fn(std::integral_constant<int, 1>{});
    case 2: return fn(std::integral_constant<int, 2>{});
    case 3: return fn(std::integral_constant<int, 3>{});
    case 4: return fn(std::integral_constant<int, 4>{});
    case 5: return fn(std::integral_constant<int, 5>{});
    case 6: return fn(std::integral_constant<int, 6>{});
    case 7: return fn(std::integral_constant<int, 7>{});
    case 8: return fn(std::integral_constant<int, 8>{});
    default: return fn(std::integral_constant<int, 0>{});
  }
}

void require_dominant(const RootSystem& rs, const WeightVec& lambda) {
  rs.check_length(lambda);
  if (!lambda.is_dominant()) {
    throw std::invalid_argument("highest weight " + lambda.str() + " is not dominant");
  }
}

}  // namespace

std::optional<RootCoords> dominance_gap(const RootSystem& rs, const WeightVec& lambda,
                                        const WeightVec& mu) {
  rs.check_length(lambda);
  rs.check_length(mu);
  auto c = rs.to_root_coords(lambda - mu);
  if (!c.is_nonnegative_integral()) return std::nullopt;
  return c;
}

BigInt weight_multiplicity(const RootSystem& rs, const WeightVec& lambda, const WeightVec& mu,
                           MultiplicityCache* cache, const EngineLimits& limits) {
  require_dominant(rs, lambda);
  rs.check_length(mu);
  WeightVec dom = rs.dominant_representative(mu).weight;
  auto gap = dominance_gap(rs, lambda, dom);
  if (!gap) return BigInt(0);
  if (dom == lambda) return BigInt(1);
  if (cache) {
    if (auto hit = cache->lookup(rs.type(), lambda, dom)) return *hit;
  }
  auto g = gap->as_integers();
  BigInt m = with_rank(rs.rank(), [&](auto rank) {
    FreudenthalPass<decltype(rank)::value> pass(rs, lambda, &g, limits);
    pass.run();
    const BigInt* found = pass.find(dom);
    if (!found) throw std::logic_error("dominant weight " + dom.str() + " missing from its interval");
    return *found;
  });
  if (cache) cache->store(rs.type(), lambda, dom, m);
  return m;
}

BigInt irrep_dimension(const RootSystem& rs, const WeightVec& lambda) {
  require_dominant(rs, lambda);
  WeightVec rho(std::vector<std::int64_t>(rs.rank(), 1));
  WeightVec shifted = lambda + rho;
  BigInt num = 1, den = 1;
  for (const auto& r : rs.positive_roots()) {
    num *= static_cast<long>(rs.form_with_root(shifted, r));
    den *= static_cast<long>(rs.form_with_root(rho, r));
  }
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw std::logic_error("Weyl dimension formula gave a non-integer");
  }
  return num / den;
}

WeightDiagram weight_diagram(const RootSystem& rs, const WeightVec& lambda, const EngineLimits& limits) {
  require_dominant(rs, lambda);
  WeightDiagram out;
  out.lambda = lambda;
  with_rank(rs.rank(), [&](auto rank) {
    FreudenthalPass<decltype(rank)::value> pass(rs, lambda, nullptr, limits);
    pass.run();
    for (std::size_t i = 0; i < pass.size(); ++i) out.entries.emplace(pass.weight(i), pass.multiplicity(i));
  });
  return out;
}

}  // namespace kostka
