#include "kostka/fixtures.hpp"

#include "kostka/descent.hpp"
#include "kostka/multiplicity.hpp"
#include "kostka/report.hpp"
#include "kostka/stretch.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>

#ifndef KOSTKA_DEFAULT_FIXTURES
#define KOSTKA_DEFAULT_FIXTURES "data/reference_tables.json"
#endif

namespace kostka {

using nlohmann::json;

namespace {

std::string class_label(int r, int period) {
  return "class " + std::to_string(r) + " (N = " + std::to_string(r) + " mod " + std::to_string(period) + ")";
}

Rational power(std::int64_t n, int j) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n), static_cast<unsigned long>(j));
  if (n < 0 && j % 2) p = -p;
  return Rational(p);
}

}  // namespace

std::filesystem::path default_fixtures_path() { return KOSTKA_DEFAULT_FIXTURES; }

std::vector<ReferenceTable> load_fixtures(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open fixtures file " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("fixtures file " + file.string() + " is not valid JSON: " + e.what());
  }
  std::vector<ReferenceTable> out;
  try {
    for (const auto& j : doc.at("fixtures")) {
      ReferenceTable fx;
      fx.id = j.at("case").get<std::string>();
      fx.type = SimpleType::parse(j.at("type").get<std::string>());
      fx.lambda = WeightVec(j.at("lambda").get<std::vector<std::int64_t>>());
      fx.mu = WeightVec(j.at("mu").get<std::vector<std::int64_t>>());
      fx.k = j.at("k").get<std::size_t>();
      fx.period = j.at("period").get<int>();
      fx.degree = j.at("degree").get<int>();
      for (const auto& s : j.at("gap")) fx.gap.push_back(parse_rational(s.get<std::string>()));
      fx.descent_multiple = j.at("descent_multiple").get<std::int64_t>();
      fx.source = j.at("source").get<std::string>();
      fx.fast_max_n = j.value("fast_max_n", std::size_t{0});
      fx.expected = quasi_polynomial_from_json({{"period", fx.period}, {"classes", j.at("classes")}});
      out.push_back(std::move(fx));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed fixtures file " + file.string() + ": " + e.what());
  }
  return out;
}

std::vector<std::string> diff_quasi_polynomials(const QuasiPolynomial& expected, const QuasiPolynomial& actual) {
  std::vector<std::string> diffs;
  if (expected.period != actual.period) {
    diffs.push_back("period: expected " + std::to_string(expected.period) + ", got " + std::to_string(actual.period));
    return diffs;
  }
  for (int r = 0; r < expected.period; ++r) {
    const auto& e = expected.classes[r];
    const auto& a = actual.classes[r];
    const int top = std::max(e.degree(), a.degree());
    for (int j = 0; j <= top; ++j) {
      if (e.coeff(j) != a.coeff(j)) {
        diffs.push_back(class_label(r, expected.period) + ", degree " + std::to_string(j) + ": expected " +
                        format_rational(e.coeff(j)) + ", got " + format_rational(a.coeff(j)));
      }
    }
  }
  return diffs;
}

std::vector<std::string> diff_against_samples(const QuasiPolynomial& expected, const std::vector<BigInt>& samples) {
  std::vector<std::string> diffs;
  const int d = expected.period;
  for (int r = 0; r < d; ++r) {
    std::vector<std::pair<std::int64_t, Rational>> residuals;  // expected - sampled
    bool any = false;
    for (std::size_t n = static_cast<std::size_t>(r); n < samples.size(); n += d) {
      auto N = static_cast<std::int64_t>(n);
      Rational res = expected.evaluate(N) - Rational(samples[n]);
      res.canonicalize();
      if (res != 0) any = true;
      residuals.emplace_back(N, res);
    }
    if (!any) continue;

    // A single wrong coefficient c_j shows up as residual delta * N^j.
    const int top = std::max(expected.classes[r].degree(), 0);
    bool explained = false;
    for (int j = 0; j <= top && !explained; ++j) {
      std::optional<Rational> delta;
      bool ok = true;
      for (const auto& [N, res] : residuals) {
        Rational base = (j == 0) ? Rational(1) : power(N, j);
        if (base == 0) {
          if (res != 0) ok = false;
          continue;
        }
        Rational cand = res / base;
        cand.canonicalize();
        if (!delta) delta = cand;
        else if (*delta != cand) ok = false;
        if (!ok) break;
      }
      if (ok && delta && *delta != 0) {
        Rational listed = expected.classes[r].coeff(j);
        Rational implied = listed - *delta;
        implied.canonicalize();
        diffs.push_back(class_label(r, d) + ", degree " + std::to_string(j) + ": expected " +
                        format_rational(listed) + ", samples imply " + format_rational(implied));
        explained = true;
      }
    }
    if (!explained) {
      std::string where;
      for (const auto& [N, res] : residuals) {
        if (res != 0) where += (where.empty() ? "" : ",") + std::to_string(N);
      }
      diffs.push_back(class_label(r, d) + ": evaluations differ from samples at N=" + where);
    }
  }
  return diffs;
}

VerifyOutcome verify_fixture(const ReferenceTable& fx, const VerifyOptions& opts, MultiplicityCache* cache) {
  const auto start = std::chrono::steady_clock::now();
  VerifyOutcome out;
  out.id = fx.id;
  RootSystem rs(fx.type);

  auto gap = dominance_gap(rs, fx.lambda, fx.mu);
  if (!gap) {
    out.diffs.push_back("lambda - mu is not in Q+");
  } else if (gap->coords != fx.gap) {
    out.diffs.push_back("gap coordinates differ from the fixture");
  }
  if (gap) {
    auto d = period_candidate(rs, fx.lambda, fx.mu);
    if (d != fx.descent_multiple) {
      out.diffs.push_back("descent multiple: expected " + std::to_string(fx.descent_multiple) + ", got " +
                          std::to_string(d));
    }
    auto cls = classify_pair(rs, fx.lambda, fx.mu);
    int pred = predicted_degree(rs, cls);
    if (pred != fx.degree) {
      out.diffs.push_back("formula degree: expected " + std::to_string(fx.degree) + ", got " + std::to_string(pred));
    }
  }
  if (fx.expected.degree() != fx.degree) {
    out.diffs.push_back("fixture table degree " + std::to_string(fx.expected.degree()) + " disagrees with its stated degree " +
                        std::to_string(fx.degree));
  }

  if (opts.fast && fx.fast_max_n > 0) {
    out.mode = "evaluate";
    auto samples = sample_sequence(rs, fx.lambda, fx.mu, fx.fast_max_n, cache, opts.jobs);
    auto d = diff_against_samples(fx.expected, samples);
    out.diffs.insert(out.diffs.end(), d.begin(), d.end());
  } else {
    out.mode = "refit";
    auto samples = sample_sequence(rs, fx.lambda, fx.mu, fx.k, cache, opts.jobs);
    FitOptions fit;
    fit.surplus = 0;
    fit.max_period = static_cast<int>(fx.k / 2);
    try {
      auto scan = fit_minimal_period(samples, fit);
      if (scan.fit.degree() != fx.degree) {
        out.diffs.push_back("fitted degree: expected " + std::to_string(fx.degree) + ", got " +
                            std::to_string(scan.fit.degree()));
      }
      auto d = diff_quasi_polynomials(fx.expected, scan.fit);
      out.diffs.insert(out.diffs.end(), d.begin(), d.end());
    } catch (const std::exception& e) {
      out.diffs.push_back(std::string("fit failed: ") + e.what());
    }
  }
  out.ok = out.diffs.empty();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace kostka
