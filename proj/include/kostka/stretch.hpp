#pragma once

#include "kostka/multiplicity.hpp"
#include "kostka/quasipoly.hpp"
#include "kostka/rootsystem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kostka {

class MultiplicityCache;

/// Supports of lambda - mu = sum c_i alpha_i against lambda = sum d_i varpi_i.
/// Index sets are zero-based.
struct PairClassification {
  std::optional<RootCoords> gap;
  std::vector<int> support_s1;         // c_i != 0
  std::vector<int> support_s2;         // c_i != 0 and d_i == 0
  std::vector<int> support_phi_prime;  // d_i == 0
  bool is_primitive = false;
  /// Some root coordinate of lambda - mu is negative, so K vanishes for N >= 1.
  bool is_zero_function = false;
  /// Smallest q with q(lambda - mu) in the root lattice. When q > 1, gap holds
  /// fractional coordinates and K is supported on multiples of q.
  std::int64_t lattice_index = 1;
};

PairClassification classify_pair(const RootSystem& rs, const WeightVec& lambda, const WeightVec& mu);

/// Degree of N -> K_{N lambda, N mu}:
/// |Phi^+(S1)| - |S1| - |Phi^+(S2)|. For primitive pairs the result is
/// cross-checked against |Phi^+| - |Phi'^+| - rank. Throws
/// std::domain_error for zero-function pairs.
int predicted_degree(const RootSystem& rs, const PairClassification& cls);

/// |Phi^+| - |Phi'^+| - rank; requires a primitive pair.
int predicted_degree_primitive(const RootSystem& rs, const PairClassification& cls);

/// K_{N lambda, N mu} for N = 0 .. max_n (max_n + 1 values), computed on up
/// to `jobs` threads.
std::vector<BigInt> sample_sequence(const RootSystem& rs, const WeightVec& lambda, const WeightVec& mu,
                                    std::size_t max_n, MultiplicityCache* cache = nullptr, unsigned jobs = 1,
                                    const EngineLimits& limits = {});

enum class PeriodStatus { TheoremBacked, Conjectural, Unavailable };

std::string to_string(PeriodStatus s);

struct StretchReport {
  MultiplicityQuery query;
  PairClassification classification;
  std::size_t k = 0;  // samples cover N = 0..k
  FitOptions options;
  std::vector<BigInt> samples;

  std::optional<QuasiPolynomial> fitted;
  std::vector<FitAttempt> periods_tested;
  std::string fit_error;  // set when no period validated

  std::optional<int> predicted_degree;  // nullopt for zero functions
  std::optional<std::int64_t> period_candidate;
  PeriodStatus period_status = PeriodStatus::Unavailable;
  std::string candidate_note;

  bool degree_match = false;
  bool period_candidate_consistent = false;

  double wall_seconds = 0.0;
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;

  int fitted_degree() const { return fitted ? fitted->degree() : -1; }
  int fitted_period() const { return fitted ? fitted->period : 0; }
  bool fit_succeeded() const { return fitted.has_value(); }
};

struct StretchOptions {
  std::optional<std::size_t> k;  // default: enough for the candidate period
  FitOptions fit;
  unsigned jobs = 1;
  EngineLimits limits;
};

/// Default k = max(d * (degree + 2 + surplus), 8); sampling N = 0..k then
/// leaves every residue class at least degree + 2 + surplus points.
std::size_t default_sample_count(int predicted_degree, std::int64_t candidate, int surplus);

StretchReport build_stretch_report(const RootSystem& rs, const WeightVec& lambda, const WeightVec& mu,
                                   const StretchOptions& opts, MultiplicityCache* cache = nullptr);

}  // namespace kostka
