#include "kostka/cache.hpp"
#include "kostka/cli.hpp"
#include "kostka/fixtures.hpp"
#include "kostka/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace kostka;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("kostka_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("mult") {
  auto r = run({"mult", "--type", "A2", "--lambda", "1,1", "--mu", "0,0", "--no-cache"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "2\n");
  r = run({"mult", "-t", "G2", "-l", "0,1", "-m", "0,0", "--no-cache", "--format", "json"});
  CHECK(r.code == cli::kOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("mult") == "2");
  r = run({"mult", "-t", "A2", "-l", "1,0", "-m", "0,0", "--no-cache"});
  CHECK(r.out == "0\n");
}

TEST_CASE("bad input exits with 2") {
  CHECK(run({"mult", "-t", "Q7", "-l", "1", "-m", "0", "--no-cache"}).code == cli::kBadInput);
  CHECK(run({"mult", "-t", "A2", "-l", "1,1,1", "-m", "0,0", "--no-cache"}).code == cli::kBadInput);
  CHECK(run({"mult", "-t", "A2", "-l", "x,1", "-m", "0,0", "--no-cache"}).code == cli::kBadInput);
  CHECK(run({"mult", "-t", "A2", "-l=-1,1", "-m", "0,0", "--no-cache"}).code == cli::kBadInput);
  CHECK(run({"stretch", "-t", "A2", "-l", "1,1", "-m=-1,2", "--no-cache"}).code == cli::kBadInput);
  CHECK(run({"frobnicate"}).code == cli::kBadInput);
  CHECK(run({}).code == cli::kBadInput);
  CHECK(run({"period", "-t", "B2", "-l", "1,1", "-m", "0,0"}).code == cli::kBadInput);
}

TEST_CASE("degree and period") {
  auto r = run({"degree", "-t", "B3", "-l", "1,1,1", "-m", "0,0,1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "6\n");
  r = run({"degree", "-t", "A2", "-l", "0,0", "-m", "1,1"});
  CHECK(r.code == cli::kZeroFunction);
  CHECK(r.out.rfind("K = 0", 0) == 0);
  CHECK(run({"period", "-t", "G2", "-l", "1,3", "-m", "0,1"}).out == "6 conjectural\n");
  CHECK(run({"period", "-t", "D4", "-l", "0,1,0,0", "-m", "0,0,0,0"}).out == "2 theorem-backed\n");
  CHECK(run({"period", "-t", "A2", "-l", "0,0", "-m", "1,1"}).code == cli::kZeroFunction);
}

TEST_CASE("stretch: json report round trip") {
  auto r = run({"stretch", "-t", "B3", "-l", "1,1,1", "-m", "0,0,1", "--no-cache", "--format", "json", "-j", "1"});
  REQUIRE(r.code == cli::kOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema_version") == kReportSchemaVersion);
  CHECK(j.at("results").at("fitted").at("period") == 2);
  auto doc = report_from_json(j);
  CHECK(doc.report.fitted_degree() == 6);
  CHECK(same_document(doc, report_from_json(to_json(doc))));
  CHECK(to_json(doc) == j);
  CHECK(j.at("results").at("classification").at("support_s1") == nlohmann::json{1, 2, 3});

  auto timed = nlohmann::json::parse(
      run({"stretch", "-t", "A2", "-l", "2,0", "-m", "0,1", "--no-cache", "--format", "json"}).out);
  auto untimed = nlohmann::json::parse(
      run({"stretch", "-t", "A2", "-l", "2,0", "-m", "0,1", "--no-cache", "--format", "json", "--omit-timing"}).out);
  CHECK(timed.dump().find("wall_time") != std::string::npos);
  CHECK(untimed.dump().find("wall_time") == std::string::npos);
  CHECK_THROWS_AS(report_from_json(nlohmann::json{{"schema_version", 99}}), std::invalid_argument);
}

TEST_CASE("stretch: fit failure exits with 3") {
  auto r = run({"stretch", "-t", "G2", "-l", "1,3", "-m", "0,1", "--no-cache", "--k", "20", "--surplus", "0"});
  CHECK(r.code == cli::kFitFailure);
  CHECK(r.err.find("increase k") != std::string::npos);
}

TEST_CASE("stretch: zero function") {
  auto r = run({"stretch", "-t", "A2", "-l", "0,0", "-m", "1,1", "--no-cache"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("zero") != std::string::npos);
}

TEST_CASE("cache commands") {
  TempDir dir;
  auto r = run({"mult", "-t", "G2", "-l", "2,2", "-m", "0,0", "--cache-dir", dir.str()});
  REQUIRE(r.code == cli::kOk);
  const std::string value = r.out;
  CHECK(run({"mult", "-t", "G2", "-l", "2,2", "-m", "0,0", "--cache-dir", dir.str()}).out == value);
  r = run({"cache", "stats", "--cache-dir", dir.str()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("entries  1") != std::string::npos);
  r = run({"cache", "audit", "--cache-dir", dir.str(), "--all"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("0 mismatches") != std::string::npos);

  // Plant a wrong value; the audit must flag it.
  {
    std::ofstream f(cache_file_in(dir.path), std::ios::app);
    f << MultiplicityCache::encode_record({SimpleType::parse("A2"), {1, 1}, {0, 0}}, BigInt(5)) << "\n";
  }
  r = run({"cache", "audit", "--cache-dir", dir.str(), "--all"});
  CHECK(r.code == cli::kEngineError);
  CHECK(r.out.find("MISMATCH A2") != std::string::npos);

  r = run({"cache", "clear", "--cache-dir", dir.str()});
  CHECK(r.code == cli::kOk);
  CHECK(run({"cache", "stats", "--cache-dir", dir.str()}).out.find("entries  0") != std::string::npos);
}

TEST_CASE("verify-paper on the small fixtures") {
  TempDir dir;
  auto r = run({"verify-paper", "--case", "d4", "--cache-dir", dir.str(), "-j", "1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.rfind("PASS d4 [refit]", 0) == 0);
}

TEST_CASE("verify-paper negative control") {
  TempDir dir;
  std::ifstream in(default_fixtures_path());
  auto doc = nlohmann::json::parse(in);
  for (auto& fx : doc.at("fixtures")) {
    if (fx.at("case") == "d4") fx.at("classes").at(1).at(3) = "1/7";
  }
  auto file = dir.path / "corrupt.json";
  std::ofstream(file) << doc.dump(2);
  auto r = run({"verify-paper", "--case", "d4", "--fixtures", file.string(), "--cache-dir", dir.str(), "-j", "1"});
  CHECK(r.code == cli::kVerifyMismatch);
  CHECK(r.out.find("FAIL d4") != std::string::npos);
  CHECK(r.out.find("class 1 (N = 1 mod 2), degree 3: expected 1/7") != std::string::npos);

  CHECK(run({"verify-paper", "--fixtures", (dir.path / "missing.json").string(), "--no-cache"}).code ==
        cli::kBadInput);
}

TEST_CASE("help and version") {
  CHECK(run({"--help"}).code == cli::kOk);
  auto r = run({"--version"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == library_version() + "\n");
}

}  // TEST_SUITE
