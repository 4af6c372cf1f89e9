#include "kostka/rootsystem.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

namespace kostka {

namespace {

constexpr int kMaxRank = 16;

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

// Order of the Weyl group of a connected Dynkin diagram, recognised from
// (rank, positive root count, simply laced).
BigInt connected_weyl_order(std::size_t r, std::size_t p, bool simply_laced) {
  if (simply_laced) {
    if (p == r * (r + 1) / 2) return factorial(r + 1);
    if (r >= 4 && p == r * (r - 1)) return (BigInt(1) << (r - 1)) * factorial(r);
    if (r == 6 && p == 36) return 51840;
    if (r == 7 && p == 63) return 2903040;
    if (r == 8 && p == 120) return 696729600;
  } else {
    if (r == 2 && p == 6) return 12;
    if (r == 4 && p == 24) return 1152;
    if (p == r * r) return (BigInt(1) << r) * factorial(r);
  }
  throw std::logic_error("unrecognised connected root system: rank " + std::to_string(r) +
                         ", " + std::to_string(p) + " positive roots");
}

}  // namespace

// ---------------------------------------------------------------- SimpleType

SimpleType SimpleType::make(Family family, int rank) {
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1; break;
    case Family::B: ok = rank >= 2; break;
    case Family::C: ok = rank >= 2; break;
    case Family::D: ok = rank >= 4; break;
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
  }
  if (ok && rank > kMaxRank) ok = false;
  if (!ok) {
    throw std::invalid_argument(std::string("invalid simple type ") + static_cast<char>(family) +
                                std::to_string(rank));
  }
  return SimpleType{family, rank};
}

SimpleType SimpleType::parse(std::string_view text) {
  if (text.size() < 2) throw std::invalid_argument("bad type '" + std::string(text) + "'");
  char f = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  if (f < 'A' || f > 'G') throw std::invalid_argument("bad type family '" + std::string(text) + "'");
  int rank = 0;
  for (char c : text.substr(1)) {
    if (c < '0' || c > '9' || rank > 1000) {
      throw std::invalid_argument("bad type rank '" + std::string(text) + "'");
    }
    rank = rank * 10 + (c - '0');
  }
  return make(static_cast<Family>(f), rank);
}

std::string SimpleType::name() const { return static_cast<char>(family) + std::to_string(rank); }

// ----------------------------------------------------------------- WeightVec

bool WeightVec::is_dominant() const {
  return std::all_of(coords.begin(), coords.end(), [](auto x) { return x >= 0; });
}

bool WeightVec::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](auto x) { return x == 0; });
}

WeightVec& WeightVec::operator+=(const WeightVec& o) {
  if (o.size() != size()) throw std::invalid_argument("weight length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

WeightVec& WeightVec::operator-=(const WeightVec& o) {
  if (o.size() != size()) throw std::invalid_argument("weight length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

std::string WeightVec::str() const { return "(" + format_int_list(coords) + ")"; }

// ---------------------------------------------------------------- RootCoords

bool RootCoords::is_integral() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const Rational& q) { return q.get_den() == 1; });
}

bool RootCoords::is_nonnegative_integral() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const Rational& q) { return q.get_den() == 1 && q >= 0; });
}

std::vector<std::int64_t> RootCoords::as_integers() const {
  std::vector<std::int64_t> out;
  out.reserve(coords.size());
  for (const auto& q : coords) {
    if (q.get_den() != 1) throw std::domain_error("root coordinates are not integral");
    if (!q.get_num().fits_slong_p()) throw std::overflow_error("root coordinate too large");
    out.push_back(q.get_num().get_si());
  }
  return out;
}

// -------------------------------------------------------------- Cartan data

std::vector<std::vector<int>> cartan_matrix(SimpleType t) {
  const int n = t.rank;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) {  // simply-laced edge, zero-based
    a[i][j] = -1;
    a[j][i] = -1;
  };
  switch (t.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      // alpha_n short
      a[n - 2][n - 1] = -1;
      a[n - 1][n - 2] = -2;
      break;
    case Family::C:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      // alpha_n long
      a[n - 2][n - 1] = -2;
      a[n - 1][n - 2] = -1;
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case Family::E:
      // 1-3-4-5-6-7-8 with 2 attached to 4
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::F:
      link(0, 1);
      a[1][2] = -1;  // alpha_3 short
      a[2][1] = -2;
      link(2, 3);
      break;
    case Family::G:
      // alpha_1 short, alpha_2 long
      a[0][1] = -3;
      a[1][0] = -1;
      break;
  }
  return a;
}

std::size_t expected_positive_root_count(SimpleType t) {
  const std::size_t l = static_cast<std::size_t>(t.rank);
  switch (t.family) {
    case Family::A: return l * (l + 1) / 2;
    case Family::B:
    case Family::C: return l * l;
    case Family::D: return l * (l - 1);
    case Family::E: return l == 6 ? 36 : l == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

// ---------------------------------------------------------------- RootSystem

RootSystem::RootSystem(SimpleType type) : type_(SimpleType::make(type.family, type.rank)) {
  const int n = rank();
  cartan_ = cartan_matrix(type_);

  // Gauss-Jordan over Q.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = cartan_[i][j];
    m[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::logic_error("singular Cartan matrix");
    std::swap(m[piv], m[col]);
    Rational inv = 1 / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  inv_cartan_.assign(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv_cartan_[i][j] = m[i][n + j];

  compute_symmetrizer();
  generate_positive_roots();

  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  weyl_order_ = parabolic_weyl_order(all);

  self_test();
}

void RootSystem::compute_symmetrizer() {
  const int n = rank();
  std::vector<Rational> d(n, Rational(0));
  d[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j = 0; j < n; ++j) {
      if (j == i || cartan_[i][j] == 0 || d[j] != 0) continue;
      d[j] = d[i] * cartan_[i][j] / cartan_[j][i];
      queue.push_back(j);
    }
  }
  BigInt lcm = 1;
  for (auto& q : d) {
    q.canonicalize();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  BigInt g = 0;
  std::vector<BigInt> ints(n);
  for (int i = 0; i < n; ++i) {
    Rational s = d[i] * lcm;
    ints[i] = s.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  symmetrizer_.resize(n);
  for (int i = 0; i < n; ++i) symmetrizer_[i] = static_cast<int>(BigInt(ints[i] / g).get_si());
}

void RootSystem::generate_positive_roots() {
  const int n = rank();
  std::set<std::vector<int>> known;
  std::vector<std::vector<int>> level;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    known.insert(e);
    level.push_back(e);
  }
  std::vector<std::vector<int>> all = level;
  // Level-by-level closure: beta + alpha_i is a root iff the alpha_i-string
  // through beta extends upward, i.e. q = p - <beta, alpha_i^vee> > 0.
  while (!level.empty()) {
    std::set<std::vector<int>> next;
    for (const auto& beta : level) {
      for (int i = 0; i < n; ++i) {
        int pair = 0;
        for (int j = 0; j < n; ++j) pair += cartan_[i][j] * beta[j];
        int p = 0;
        std::vector<int> down = beta;
        while (true) {
          down[i] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        if (p - pair > 0) {
          std::vector<int> up = beta;
          up[i] += 1;
          if (!known.count(up)) next.insert(up);
        }
      }
    }
    level.assign(next.begin(), next.end());
    for (const auto& r : level) {
      known.insert(r);
      all.push_back(r);
    }
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  positive_roots_ = std::move(all);
  positive_roots_weight_.clear();
  for (const auto& r : positive_roots_) {
    WeightVec w = WeightVec::zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[i] += static_cast<std::int64_t>(cartan_[i][j]) * r[j];
    positive_roots_weight_.push_back(std::move(w));
  }
}

void RootSystem::self_test() const {
  const int n = rank();
  if (positive_roots_.size() != expected_positive_root_count(type_)) {
    throw std::logic_error("positive root count mismatch for " + type_.name());
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational s = 0;
      for (int k = 0; k < n; ++k) s += cartan_[i][k] * inv_cartan_[k][j];
      if (s != (i == j ? 1 : 0)) throw std::logic_error("inverse Cartan check failed");
      if (symmetrizer_[i] * cartan_[i][j] != symmetrizer_[j] * cartan_[j][i]) {
        throw std::logic_error("symmetrizer check failed");
      }
    }
  }
  // Labelling anchors: these pin the orientation of the Cartan matrix.
  auto expect = [&](const WeightVec& w, std::vector<int> roots) {
    auto rc = to_root_coords(w);
    for (int i = 0; i < n; ++i) {
      if (rc[i] != roots[i]) throw std::logic_error("labelling self-test failed for " + type_.name());
    }
  };
  if (type_.family == Family::G) expect(WeightVec{1, 2}, {8, 5});
  if (type_.family == Family::B && n == 3) expect(WeightVec{1, 1, 0}, {2, 3, 3});
  if (type_.family == Family::F) expect(WeightVec{2, 0, 0, 0}, {4, 6, 8, 4});
}

void RootSystem::check_length(const WeightVec& w) const {
  if (static_cast<int>(w.size()) != rank()) {
    throw std::invalid_argument("weight " + w.str() + " has length " + std::to_string(w.size()) +
                                ", expected " + std::to_string(rank()) + " for " + type_.name());
  }
}

RootCoords RootSystem::to_root_coords(const WeightVec& w) const {
  check_length(w);
  const int n = rank();
  RootCoords out;
  out.coords.assign(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (w[j] != 0) out.coords[i] += inv_cartan_[i][j] * Rational(static_cast<long>(w[j]));
    }
    out.coords[i].canonicalize();
  }
  return out;
}

std::vector<Rational> RootSystem::to_weight_coords(const RootCoords& r) const {
  const int n = rank();
  if (static_cast<int>(r.size()) != n) throw std::invalid_argument("root coordinate length mismatch");
  std::vector<Rational> out(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i] += cartan_[i][j] * r.coords[j];
    out[i].canonicalize();
  }
  return out;
}

std::int64_t RootSystem::pairing(const WeightVec& w, int i) const {
  check_length(w);
  if (i < 0 || i >= rank()) throw std::out_of_range("simple root index out of range");
  return w[i];
}

std::int64_t RootSystem::form_with_root(const WeightVec& w, std::span<const int> root) const {
  std::int64_t s = 0;
  for (int j = 0; j < rank(); ++j) s += static_cast<std::int64_t>(root[j]) * symmetrizer_[j] * w[j];
  return s;
}

Rational RootSystem::form(const WeightVec& u, const WeightVec& v) const {
  auto c = to_root_coords(v);
  Rational s = 0;
  for (int j = 0; j < rank(); ++j) s += c[j] * symmetrizer_[j] * Rational(static_cast<long>(u[j]));
  s.canonicalize();
  return s;
}

void RootSystem::reflect(WeightVec& w, int i) const {
  const std::int64_t c = w[i];
  if (c == 0) return;
  for (int j = 0; j < rank(); ++j) w[j] -= c * cartan_[j][i];
}

DominantResult RootSystem::dominant_representative(WeightVec w) const {
  check_length(w);
  DominantResult out;
  const int n = rank();
  while (true) {
    int i = 0;
    while (i < n && w[i] >= 0) ++i;
    if (i == n) break;
    reflect(w, i);
    ++out.reflections;
  }
  out.weight = std::move(w);
  return out;
}

BigInt RootSystem::orbit_size(const WeightVec& dominant) const {
  check_length(dominant);
  if (!dominant.is_dominant()) throw std::invalid_argument("orbit_size expects a dominant weight");
  std::vector<int> stab;
  for (int i = 0; i < rank(); ++i)
    if (dominant[i] == 0) stab.push_back(i);
  return weyl_order_ / parabolic_weyl_order(stab);
}

BigInt RootSystem::orbit_size_by_closure(const WeightVec& w, std::size_t max_elements) const {
  check_length(w);
  std::set<WeightVec> seen{w};
  std::deque<WeightVec> queue{w};
  while (!queue.empty()) {
    WeightVec cur = std::move(queue.front());
    queue.pop_front();
    for (int i = 0; i < rank(); ++i) {
      if (cur[i] == 0) continue;
      WeightVec next = cur;
      reflect(next, i);
      if (seen.insert(next).second) {
        if (seen.size() > max_elements) {
          throw OrbitTooLarge("orbit of " + w.str() + " exceeds " + std::to_string(max_elements) +
                              " elements");
        }
        queue.push_back(std::move(next));
      }
    }
  }
  return BigInt(static_cast<unsigned long>(seen.size()));
}

SubsystemStats RootSystem::subsystem_stats(std::span<const int> indices) const {
  std::vector<bool> in(rank(), false);
  for (int i : indices) {
    if (i < 0 || i >= rank()) throw std::out_of_range("simple root index out of range");
    in[i] = true;
  }
  SubsystemStats s;
  s.rank = static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
  for (const auto& r : positive_roots_) {
    bool inside = true;
    for (int j = 0; j < rank(); ++j) {
      if (r[j] != 0 && !in[j]) {
        inside = false;
        break;
      }
    }
    if (inside) ++s.positive_roots;
  }
  return s;
}

BigInt RootSystem::parabolic_weyl_order(std::span<const int> indices) const {
  std::vector<bool> in(rank(), false);
  for (int i : indices) {
    if (i < 0 || i >= rank()) throw std::out_of_range("simple root index out of range");
    in[i] = true;
  }
  std::vector<bool> done(rank(), false);
  BigInt order = 1;
  for (int start = 0; start < rank(); ++start) {
    if (!in[start] || done[start]) continue;
    std::vector<int> comp;
    std::deque<int> queue{start};
    done[start] = true;
    bool simply_laced = true;
    while (!queue.empty()) {
      int i = queue.front();
      queue.pop_front();
      comp.push_back(i);
      for (int j = 0; j < rank(); ++j) {
        if (j == i || cartan_[i][j] == 0 || !in[j]) continue;
        if (cartan_[i][j] != -1) simply_laced = false;
        if (!done[j]) {
          done[j] = true;
          queue.push_back(j);
        }
      }
    }
    auto stats = subsystem_stats(comp);
    order *= connected_weyl_order(comp.size(), stats.positive_roots, simply_laced);
  }
  return order;
}

}  // namespace kostka
