#include "kostka/cache.hpp"
#include "kostka/stretch.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace kostka;

namespace {

RootSystem sys(const char* name) { return RootSystem(SimpleType::parse(name)); }

}  // namespace

TEST_SUITE("stretch") {

TEST_CASE("classification of the worked examples") {
  auto cls = classify_pair(sys("G2"), {1, 3}, {0, 1});
  CHECK(cls.is_primitive);
  CHECK_FALSE(cls.is_zero_function);
  CHECK(cls.gap->as_integers() == std::vector<std::int64_t>{8, 5});
  CHECK(cls.support_phi_prime.empty());
  CHECK(predicted_degree(sys("G2"), cls) == 4);

  auto d4 = sys("D4");
  cls = classify_pair(d4, {0, 1, 0, 0}, {0, 0, 0, 0});
  CHECK(cls.support_phi_prime == std::vector<int>{0, 2, 3});
  CHECK(predicted_degree(d4, cls) == 5);
  CHECK(predicted_degree(sys("B3"), classify_pair(sys("B3"), {1, 1, 1}, {0, 0, 1})) == 6);
  CHECK(predicted_degree(sys("F4"), classify_pair(sys("F4"), {2, 0, 0, 0}, {0, 0, 0, 0})) == 11);
}

TEST_CASE("non-primitive pair") {
  auto a2 = sys("A2");
  auto cls = classify_pair(a2, {2, 0}, {0, 1});
  REQUIRE(cls.gap);
  CHECK(cls.gap->as_integers() == std::vector<std::int64_t>{1, 0});
  CHECK_FALSE(cls.is_primitive);
  CHECK(cls.support_s1 == std::vector<int>{0});
  CHECK(cls.support_s2.empty());
  CHECK(predicted_degree(a2, cls) == 0);
  CHECK_THROWS_AS(predicted_degree_primitive(a2, cls), std::domain_error);
}

TEST_CASE("zero functions") {
  auto a2 = sys("A2");
  auto cls = classify_pair(a2, {0, 0}, {1, 1});
  CHECK(cls.is_zero_function);
  CHECK_FALSE(cls.gap);
  CHECK_THROWS_AS(predicted_degree(a2, cls), std::domain_error);
  auto s = sample_sequence(a2, {0, 0}, {1, 1}, 5);
  CHECK(s == std::vector<BigInt>{1, 0, 0, 0, 0, 0});

  StretchOptions opts;
  auto rep = build_stretch_report(a2, {0, 0}, {1, 1}, opts);
  CHECK(rep.classification.is_zero_function);
  CHECK(rep.samples.empty());
  CHECK_FALSE(rep.predicted_degree);
}

TEST_CASE("pairs off the root lattice are supported on multiples of the index") {
  auto a2 = sys("A2");
  auto cls = classify_pair(a2, {1, 0}, {0, 0});
  CHECK_FALSE(cls.is_zero_function);
  CHECK(cls.lattice_index == 3);
  auto s = sample_sequence(a2, {1, 0}, {0, 0}, 9);
  for (std::size_t n = 0; n < s.size(); ++n) CHECK(s[n] == (n % 3 == 0 ? 1 : 0));

  auto b3 = sys("B3");
  auto rep = build_stretch_report(b3, {0, 0, 1}, {0, 0, 0}, StretchOptions{});
  CHECK(rep.classification.lattice_index == 2);
  REQUIRE(rep.fit_succeeded());
  CHECK(rep.degree_match);
  CHECK(rep.period_candidate_consistent);
}

TEST_CASE("samples match tableau counts in type A") {
  for (auto [lambda, mu] : std::vector<std::pair<WeightVec, WeightVec>>{
           {{1, 1}, {0, 0}}, {{2, 1}, {0, 1}}, {{1, 0, 1}, {0, 1, 0}}, {{2, 0, 1}, {0, 0, 0}}}) {
    auto rs = sys(lambda.size() == 2 ? "A2" : "A3");
    auto s = sample_sequence(rs, lambda, mu, 6);
    for (std::int64_t n = 0; n < 7; ++n) {
      CAPTURE(n);
      CHECK(s[n] == oracle::type_a_kostka(n * lambda, n * mu));
    }
  }
}

TEST_CASE("samples match Kostant's formula for G2 and B3") {
  auto g2 = sys("G2");
  auto s = sample_sequence(g2, {1, 3}, {0, 1}, 3);
  for (std::int64_t n = 0; n < 4; ++n) {
    oracle::Kostant k(g2, n * WeightVec{1, 3});
    CHECK(s[n] == k.multiplicity(n * WeightVec{0, 1}));
  }
  auto b3 = sys("B3");
  s = sample_sequence(b3, {1, 1, 1}, {0, 0, 1}, 2);
  for (std::int64_t n = 0; n < 3; ++n) {
    oracle::Kostant k(b3, n * WeightVec{1, 1, 1});
    CHECK(s[n] == k.multiplicity(n * WeightVec{0, 0, 1}));
  }
}

TEST_CASE("threaded sampling agrees with serial sampling") {
  auto rs = sys("C3");
  auto serial = sample_sequence(rs, {1, 0, 1}, {0, 1, 0}, 9, nullptr, 1);
  auto threaded = sample_sequence(rs, {1, 0, 1}, {0, 1, 0}, 9, nullptr, 4);
  CHECK(serial == threaded);
  MultiplicityCache cache;
  auto cached = sample_sequence(rs, {1, 0, 1}, {0, 1, 0}, 9, &cache, 3);
  CHECK(serial == cached);
  CHECK(cache.stats().entries >= 8);
}

TEST_CASE("default sample counts") {
  CHECK(default_sample_count(0, 1, 2) == 8);
  CHECK(default_sample_count(4, 6, 0) == 36);
  CHECK(default_sample_count(6, 2, 2) == 20);
}

TEST_CASE("stretch report for the G2 example at the published k") {
  StretchOptions opts;
  opts.k = 36;
  opts.fit.surplus = 0;
  auto rep = build_stretch_report(sys("G2"), {1, 3}, {0, 1}, opts);
  REQUIRE(rep.fit_succeeded());
  CHECK(rep.fitted_period() == 6);
  CHECK(rep.fitted_degree() == 4);
  CHECK(rep.degree_match);
  CHECK(rep.period_candidate == 6);
  CHECK(rep.period_status == PeriodStatus::Conjectural);
  CHECK(rep.period_candidate_consistent);
  for (int r = 0; r < 6; ++r) CHECK(rep.fitted->classes[r].coeff(4) == Rational(61, 27));
}

TEST_CASE("too few samples is reported, not thrown") {
  StretchOptions opts;
  opts.k = 20;
  auto rep = build_stretch_report(sys("G2"), {1, 3}, {0, 1}, opts);
  CHECK_FALSE(rep.fit_succeeded());
  CHECK(rep.fit_error.find("increase k") != std::string::npos);
}

}  // TEST_SUITE
