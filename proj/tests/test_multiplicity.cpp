#include "kostka/cache.hpp"
#include "kostka/multiplicity.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

using namespace kostka;

namespace {

RootSystem sys(const char* name) { return RootSystem(SimpleType::parse(name)); }

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("kostka_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

BigInt diagram_dimension(const RootSystem& rs, const WeightDiagram& d) {
  BigInt total = 0;
  for (const auto& [w, m] : d.entries) total += rs.orbit_size(w) * m;
  return total;
}

}  // namespace

TEST_SUITE("multiplicity") {

TEST_CASE("small known values") {
  CHECK(weight_multiplicity(sys("G2"), {1, 0}, {0, 0}) == 1);
  CHECK(weight_multiplicity(sys("G2"), {0, 1}, {0, 0}) == 2);
  CHECK(weight_multiplicity(sys("G2"), {1, 2}, {0, 0}) == oracle::Kostant(sys("G2"), {1, 2}).multiplicity({0, 0}));
  CHECK(weight_multiplicity(sys("A2"), {1, 0}, {0, 0}) == 0);
  CHECK(weight_multiplicity(sys("A2"), {1, 1}, {0, 0}) == 2);
  CHECK(weight_multiplicity(sys("D4"), {0, 1, 0, 0}, {0, 0, 0, 0}) == 4);
  CHECK(weight_multiplicity(sys("E8"), {0, 0, 0, 0, 0, 0, 0, 1}, WeightVec::zero(8)) == 8);
}

TEST_CASE("Weyl dimensions") {
  CHECK(irrep_dimension(sys("G2"), {1, 0}) == 7);
  CHECK(irrep_dimension(sys("G2"), {0, 1}) == 14);
  CHECK(irrep_dimension(sys("F4"), {0, 0, 0, 1}) == 26);
  CHECK(irrep_dimension(sys("F4"), {1, 0, 0, 0}) == 52);
  CHECK(irrep_dimension(sys("E8"), {0, 0, 0, 0, 0, 0, 0, 1}) == 248);
  CHECK(irrep_dimension(sys("E7"), {0, 0, 0, 0, 0, 0, 1}) == 56);
  CHECK(irrep_dimension(sys("D4"), {0, 1, 0, 0}) == 28);
  CHECK(irrep_dimension(sys("B3"), {0, 0, 1}) == 8);
}

TEST_CASE("weight diagram sums to the Weyl dimension") {
  auto rs = sys("D4");
  auto d = weight_diagram(rs, {0, 1, 0, 0});
  CHECK(d.entries.size() == 2);
  CHECK(diagram_dimension(rs, d) == 28);

  oracle::Gen gen(21);
  for (const char* name : {"A1", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6"}) {
    auto r = sys(name);
    for (int trial = 0; trial < 4; ++trial) {
      WeightVec lambda = gen.dominant(r.rank(), r.rank() >= 4 ? 1 : 3);
      CAPTURE(name);
      CAPTURE(lambda.str());
      auto diag = weight_diagram(r, lambda);
      CHECK(diag.entries.at(lambda) == 1);
      CHECK(diagram_dimension(r, diag) == irrep_dimension(r, lambda));
    }
  }
}

TEST_CASE("type A agrees with tableau counts") {
  oracle::Gen gen(22);
  for (const char* name : {"A1", "A2", "A3", "A4"}) {
    auto rs = sys(name);
    for (int trial = 0; trial < 25; ++trial) {
      WeightVec lambda = gen.dominant(rs.rank(), 3);
      WeightVec mu = gen.dominant(rs.rank(), 2);
      CAPTURE(lambda.str());
      CAPTURE(mu.str());
      CHECK(weight_multiplicity(rs, lambda, mu) == oracle::type_a_kostka(lambda, mu));
    }
  }
}

TEST_CASE("agrees with Kostant's formula, including non-dominant weights") {
  oracle::Gen gen(23);
  for (const char* name : {"B2", "C3", "G2", "B3", "D4"}) {
    auto rs = sys(name);
    for (int trial = 0; trial < 3; ++trial) {
      WeightVec lambda = gen.dominant(rs.rank(), 2);
      oracle::Kostant k(rs, lambda);
      CHECK(k.weyl_order() == rs.weyl_order().get_ui());
      for (int j = 0; j < 6; ++j) {
        WeightVec mu = gen.any(rs.rank(), 2);
        CAPTURE(name);
        CAPTURE(lambda.str());
        CAPTURE(mu.str());
        CHECK(weight_multiplicity(rs, lambda, mu) == k.multiplicity(mu));
      }
    }
  }
}

TEST_CASE("nonvanishing iff dominance (property)") {
  oracle::Gen gen(24);
  for (const char* name : {"A2", "B3", "C2", "D4", "G2"}) {
    auto rs = sys(name);
    for (int trial = 0; trial < 40; ++trial) {
      WeightVec lambda = gen.dominant(rs.rank(), 3);
      WeightVec mu = gen.dominant(rs.rank(), 3);
      bool below = dominance_gap(rs, lambda, mu).has_value();
      CHECK((weight_multiplicity(rs, lambda, mu) > 0) == below);
    }
  }
}

TEST_CASE("dominance gap") {
  auto g = dominance_gap(sys("G2"), {1, 3}, {0, 1});
  REQUIRE(g);
  CHECK(g->as_integers() == std::vector<std::int64_t>{8, 5});
  CHECK_FALSE(dominance_gap(sys("A2"), {1, 0}, {0, 0}));
  CHECK_FALSE(dominance_gap(sys("A2"), {0, 0}, {1, 1}));
}

TEST_CASE("input validation") {
  auto rs = sys("A2");
  CHECK_THROWS_AS(weight_multiplicity(rs, {-1, 2}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(weight_multiplicity(rs, {1, 1, 1}, {0, 0}), std::invalid_argument);
  EngineLimits tiny;
  tiny.max_dominant_weights = 3;
  CHECK_THROWS_AS(weight_multiplicity(sys("B3"), {6, 6, 6}, {0, 0, 0}, nullptr, tiny), SizeGuardExceeded);
}

TEST_CASE("cache persists across instances") {
  TempDir tmp;
  auto file = cache_file_in(tmp.path);
  auto rs = sys("G2");
  {
    MultiplicityCache cache(file);
    CHECK(weight_multiplicity(rs, {2, 2}, {0, 1}, &cache) == weight_multiplicity(rs, {2, 2}, {0, 1}));
    CHECK(cache.stats().misses == 1);
    CHECK(cache.stats().stored == 1);
  }
  MultiplicityCache again(file);
  CHECK(again.stats().entries == 1);
  auto hit = again.lookup(rs.type(), {2, 2}, {0, 1});
  REQUIRE(hit);
  CHECK(*hit == weight_multiplicity(rs, {2, 2}, {0, 1}));
  // Non-dominant mu is keyed by its dominant representative.
  CHECK(weight_multiplicity(rs, {2, 2}, {0, 1}, &again) == *hit);
  CHECK(again.stats().hits >= 2);
}

TEST_CASE("cache skips torn and stale lines") {
  TempDir tmp;
  auto file = cache_file_in(tmp.path);
  CacheKey key{SimpleType::parse("A2"), {1, 1}, {0, 0}};
  std::string good = MultiplicityCache::encode_record(key, BigInt(2));
  std::string stale = good;
  auto pos = stale.find("\"format_version\":1");
  REQUIRE(pos != std::string::npos);
  stale.replace(pos, 18, "\"format_version\":99");
  {
    std::ofstream out(file);
    out << good << "\n" << "{\"format_version\":1,\"type\":\"A2\",\"lam" << "\n" << stale << "\n" << "not json\n";
  }
  MultiplicityCache cache(file);
  CHECK(cache.stats().entries == 1);
  CHECK(cache.stats().skipped_lines == 3);
  CHECK(MultiplicityCache::decode_record(good).has_value());
  CHECK_FALSE(MultiplicityCache::decode_record(stale).has_value());
  auto decoded = MultiplicityCache::decode_record(good);
  CHECK(decoded->first == key);
  CHECK(decoded->second == 2);
}

TEST_CASE("cache audit catches corrupted entries") {
  MultiplicityCache cache;
  auto rs = sys("A2");
  cache.store(rs.type(), {2, 1}, {1, 0}, BigInt(999));
  cache.set_audit_rate(1.0);
  auto v = cache.lookup(rs.type(), {2, 1}, {1, 0});
  REQUIRE(v);
  CHECK(cache.audit_mismatches() == 1);
}

TEST_CASE("cache clear removes the file") {
  TempDir tmp;
  auto file = cache_file_in(tmp.path);
  MultiplicityCache cache(file);
  weight_multiplicity(sys("A2"), {3, 0}, {1, 1}, &cache);
  CHECK(std::filesystem::exists(file));
  cache.clear();
  CHECK(cache.stats().entries == 0);
  CHECK_FALSE(std::filesystem::exists(file));
}

}  // TEST_SUITE
