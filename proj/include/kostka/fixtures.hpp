#pragma once

#include "kostka/quasipoly.hpp"
#include "kostka/rootsystem.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace kostka {

class MultiplicityCache;

/// One published stretched-Kostka table with the data needed to rebuild it.
struct ReferenceTable {
  std::string id;
  SimpleType type;
  WeightVec lambda;
  WeightVec mu;
  std::size_t k = 0;  // refit samples N = 0..k
  int period = 1;
  int degree = 0;
  std::vector<Rational> gap;
  std::int64_t descent_multiple = 1;
  std::string source;
  QuasiPolynomial expected;
  /// Largest N checked in fast mode; 0 when the fixture has no fast mode.
  std::size_t fast_max_n = 0;
};

std::vector<ReferenceTable> load_fixtures(const std::filesystem::path& file);
/// Path compiled into the library, pointing at the shipped data file.
std::filesystem::path default_fixtures_path();

struct VerifyOptions {
  bool fast = false;
  unsigned jobs = 1;
};

struct VerifyOutcome {
  std::string id;
  std::string mode;  // "refit" or "evaluate"
  bool ok = true;
  std::vector<std::string> diffs;
  double seconds = 0.0;
};

/// Recomputes the fixture and compares everything exactly. The refit uses
/// the bare degree criterion (surplus 0) at the fixture's k. In fast mode,
/// fixtures with fast_max_n only compare evaluations for N <= fast_max_n.
VerifyOutcome verify_fixture(const ReferenceTable& fx, const VerifyOptions& opts, MultiplicityCache* cache);

/// Coefficientwise differences, each naming the residue class and degree.
std::vector<std::string> diff_quasi_polynomials(const QuasiPolynomial& expected, const QuasiPolynomial& actual);

/// Explains value mismatches between a quasi-polynomial and samples. When the
/// residuals of a class are those of a single wrong coefficient, the message
/// names its class and degree.
std::vector<std::string> diff_against_samples(const QuasiPolynomial& expected, const std::vector<BigInt>& samples);

}  // namespace kostka
