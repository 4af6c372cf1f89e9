#include "kostka/cli.hpp"

#include "kostka/cache.hpp"
#include "kostka/descent.hpp"
#include "kostka/fixtures.hpp"
#include "kostka/multiplicity.hpp"
#include "kostka/report.hpp"
#include "kostka/stretch.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <memory>
#include <random>
#include <thread>

namespace kostka::cli {

namespace {

struct BadInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct QueryFlags {
  std::string type;
  std::string lambda;
  std::string mu;
};

struct CacheFlags {
  std::string dir;
  bool disabled = false;
};

struct Query {
  std::unique_ptr<RootSystem> rs;
  WeightVec lambda;
  WeightVec mu;
};

Query parse_query(const QueryFlags& f, bool mu_dominant) {
  Query q;
  try {
    q.rs = std::make_unique<RootSystem>(SimpleType::parse(f.type));
    q.lambda = WeightVec(parse_int_list(f.lambda));
    q.mu = WeightVec(parse_int_list(f.mu));
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  const auto n = static_cast<std::size_t>(q.rs->rank());
  if (q.lambda.size() != n || q.mu.size() != n) {
    throw BadInput("weights for " + q.rs->type().name() + " need " + std::to_string(n) + " coordinates");
  }
  if (!q.lambda.is_dominant()) throw BadInput("lambda " + q.lambda.str() + " is not dominant");
  if (mu_dominant && !q.mu.is_dominant()) throw BadInput("mu " + q.mu.str() + " is not dominant");
  return q;
}

void add_query_flags(CLI::App* cmd, QueryFlags& f) {
  cmd->add_option("--type,-t", f.type, "Simple type, e.g. G2, B3, E8")->required();
  cmd->add_option("--lambda,-l", f.lambda, "Highest weight, comma-separated fundamental-weight coordinates")
      ->required();
  cmd->add_option("--mu,-m", f.mu, "Weight, comma-separated fundamental-weight coordinates")->required();
}

void add_cache_flags(CLI::App* cmd, CacheFlags& f) {
  cmd->add_option("--cache-dir", f.dir, "Cache directory (default: $KOSTKA_CACHE, then the user cache dir)");
  cmd->add_flag("--no-cache", f.disabled, "Do not read or write the multiplicity cache");
}

std::unique_ptr<MultiplicityCache> open_cache(const CacheFlags& f) {
  if (f.disabled) return nullptr;
  auto dir = resolve_cache_dir(f.dir.empty() ? std::nullopt : std::optional<std::string>(f.dir));
  return std::make_unique<MultiplicityCache>(cache_file_in(dir));
}

void flush_warnings(const MultiplicityCache* cache, std::ostream& err) {
  if (!cache) return;
  for (const auto& w : cache->warnings()) err << "warning: " << w << "\n";
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "kostka";
  for (const auto& a : args) s += " " + a;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weight multiplicities and stretched Kostka quasi-polynomials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  // mult
  QueryFlags mult_q;
  CacheFlags mult_c;
  std::string mult_format = "table";
  auto* mult = app.add_subcommand("mult", "Weight multiplicity dim V_lambda(mu)");
  add_query_flags(mult, mult_q);
  add_cache_flags(mult, mult_c);
  mult->add_option("--format", mult_format)->check(CLI::IsMember({"table", "json"}));

  // stretch
  QueryFlags st_q;
  CacheFlags st_c;
  std::size_t st_k = 0;
  FitOptions st_fit;
  bool st_no_int = false;
  bool st_omit_timing = false;
  unsigned st_jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string st_format = "table";
  auto* stretch = app.add_subcommand("stretch", "Sample K(N lambda, N mu), fit its quasi-polynomial, compare with the formulas");
  add_query_flags(stretch, st_q);
  add_cache_flags(stretch, st_c);
  stretch->add_option("--k", st_k, "Sample N = 0..k (default: enough for the candidate period)");
  stretch->add_option("--surplus", st_fit.surplus, "Held-out validation points per residue class")
      ->check(CLI::NonNegativeNumber);
  stretch->add_option("--max-period", st_fit.max_period, "Largest period scanned")->check(CLI::PositiveNumber);
  stretch->add_flag("--no-integer-check", st_no_int, "Accept fits with non-integer values at sampled N");
  stretch->add_option("--jobs,-j", st_jobs, "Concurrent sample evaluations")->check(CLI::PositiveNumber);
  stretch->add_option("--format", st_format)->check(CLI::IsMember({"table", "json"}));
  stretch->add_flag("--omit-timing", st_omit_timing, "Leave wall time out of json output");

  // degree
  QueryFlags deg_q;
  auto* degree = app.add_subcommand("degree", "Degree predicted by the parabolic root counts (no sampling)");
  add_query_flags(degree, deg_q);

  // period
  QueryFlags per_q;
  auto* period = app.add_subcommand("period", "Descent-lattice period candidate");
  add_query_flags(period, per_q);

  // verify-paper
  std::string vp_case = "all";
  bool vp_fast = false;
  std::string vp_fixtures = default_fixtures_path().string();
  unsigned vp_jobs = std::max(1u, std::thread::hardware_concurrency());
  CacheFlags vp_c;
  auto* verify = app.add_subcommand("verify-paper", "Rebuild the shipped reference tables and compare exactly");
  verify->add_option("--case", vp_case)->check(CLI::IsMember({"all", "g2", "b3", "d4", "f4"}));
  verify->add_flag("--fast", vp_fast, "Check F4 by evaluation at N <= 20 instead of a full refit");
  verify->add_option("--fixtures", vp_fixtures, "Fixtures file");
  verify->add_option("--jobs,-j", vp_jobs)->check(CLI::PositiveNumber);
  add_cache_flags(verify, vp_c);

  // cache
  CacheFlags ca_c;
  std::string ca_action;
  double ca_fraction = 0.01;
  bool ca_all = false;
  unsigned ca_seed = 1;
  auto* cache_cmd = app.add_subcommand("cache", "Inspect, audit or clear the multiplicity cache");
  cache_cmd->add_option("action", ca_action)->required()->check(CLI::IsMember({"stats", "audit", "clear"}));
  cache_cmd->add_option("--cache-dir", ca_c.dir);
  cache_cmd->add_option("--fraction", ca_fraction, "Share of entries recomputed by audit")->check(CLI::Range(0.0, 1.0));
  cache_cmd->add_flag("--all", ca_all, "Audit every entry");
  cache_cmd->add_option("--seed", ca_seed);

  std::vector<std::string> argv_storage{"kostka"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << library_version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }

  try {
    if (*mult) {
      auto q = parse_query(mult_q, false);
      auto cache = open_cache(mult_c);
      BigInt m = weight_multiplicity(*q.rs, q.lambda, q.mu, cache.get());
      flush_warnings(cache.get(), err);
      if (mult_format == "json") {
        nlohmann::json j = {{"type", q.rs->type().name()},
                            {"lambda", q.lambda.coords},
                            {"mu", q.mu.coords},
                            {"mult", m.get_str()}};
        out << j.dump() << "\n";
      } else {
        out << m.get_str() << "\n";
      }
      return kOk;
    }

    if (*stretch) {
      auto q = parse_query(st_q, true);
      auto cache = open_cache(st_c);
      StretchOptions opts;
      if (st_k > 0) opts.k = st_k;
      opts.fit = st_fit;
      opts.fit.require_integer_outputs = !st_no_int;
      opts.jobs = st_jobs;
      ReportDocument doc;
      doc.command = join_args(args);
      doc.library_version = library_version();
      doc.report = build_stretch_report(*q.rs, q.lambda, q.mu, opts, cache.get());
      flush_warnings(cache.get(), err);
      if (st_format == "json") {
        out << to_json(doc, !st_omit_timing).dump(2) << "\n";
      } else {
        out << render_table(doc.report);
      }
      if (doc.report.classification.is_zero_function) return kOk;
      if (!doc.report.fit_succeeded()) {
        err << "fit failed: " << doc.report.fit_error << "\n";
        return kFitFailure;
      }
      return kOk;
    }

    if (*degree) {
      auto q = parse_query(deg_q, true);
      auto cls = classify_pair(*q.rs, q.lambda, q.mu);
      if (cls.is_zero_function) {
        out << "K = 0 (identically zero: mu is not below lambda)\n";
        return kZeroFunction;
      }
      out << predicted_degree(*q.rs, cls) << "\n";
      return kOk;
    }

    if (*period) {
      auto q = parse_query(per_q, true);
      if (classify_pair(*q.rs, q.lambda, q.mu).is_zero_function) {
        out << "K = 0 (identically zero: mu is not below lambda)\n";
        return kZeroFunction;
      }
      std::int64_t d = 0;
      try {
        d = period_candidate(*q.rs, q.lambda, q.mu);
      } catch (const std::invalid_argument& e) {
        throw BadInput(e.what());
      }
      out << d << " " << (q.mu.is_zero() ? "theorem-backed" : "conjectural") << "\n";
      return kOk;
    }

    if (*verify) {
      std::vector<ReferenceTable> fixtures;
      try {
        fixtures = load_fixtures(vp_fixtures);
      } catch (const std::exception& e) {
        throw BadInput(e.what());
      }
      auto cache = open_cache(vp_c);
      bool all_ok = true;
      std::size_t checked = 0;
      for (const auto& fx : fixtures) {
        if (vp_case != "all" && fx.id != vp_case) continue;
        ++checked;
        auto res = verify_fixture(fx, VerifyOptions{vp_fast, vp_jobs}, cache.get());
        out << (res.ok ? "PASS " : "FAIL ") << fx.id << " [" << res.mode << "] " << fx.source << "\n";
        for (const auto& d : res.diffs) out << "  " << d << "\n";
        all_ok = all_ok && res.ok;
      }
      flush_warnings(cache.get(), err);
      if (checked == 0) {
        err << "no fixture matches case '" << vp_case << "'\n";
        return kBadInput;
      }
      return all_ok ? kOk : kVerifyMismatch;
    }

    if (*cache_cmd) {
      MultiplicityCache cache(
          cache_file_in(resolve_cache_dir(ca_c.dir.empty() ? std::nullopt : std::optional<std::string>(ca_c.dir))));
      if (ca_action == "stats") {
        auto s = cache.stats();
        out << "file     " << cache.file()->string() << "\n";
        out << "entries  " << s.entries << "\n";
        out << "skipped  " << s.skipped_lines << "\n";
        return kOk;
      }
      if (ca_action == "clear") {
        cache.clear();
        out << "cleared " << cache.file()->string() << "\n";
        return kOk;
      }
      auto entries = cache.entries();
      std::mt19937 rng(ca_seed);
      std::vector<std::size_t> picks;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (ca_all || std::uniform_real_distribution<double>(0.0, 1.0)(rng) < ca_fraction) picks.push_back(i);
      }
      if (picks.empty() && !entries.empty()) {
        picks.push_back(std::uniform_int_distribution<std::size_t>(0, entries.size() - 1)(rng));
      }
      std::size_t mismatches = 0;
      for (auto i : picks) {
        const auto& [key, cached] = entries[i];
        RootSystem rs(key.type);
        BigInt fresh = weight_multiplicity(rs, key.lambda, key.mu, nullptr);
        if (fresh != cached) {
          ++mismatches;
          out << "MISMATCH " << key.type.name() << " " << key.lambda.str() << " " << key.mu.str() << ": cached "
              << cached.get_str() << ", fresh " << fresh.get_str() << "\n";
        }
      }
      out << "audited " << picks.size() << " of " << entries.size() << " entries, " << mismatches << " mismatches\n";
      return mismatches == 0 ? kOk : kEngineError;
    }
  } catch (const BadInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "engine error: " << e.what() << "\n";
    return kEngineError;
  }
  return kBadInput;
}

}  // namespace kostka::cli
