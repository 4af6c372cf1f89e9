#pragma once

#include "kostka/numeric.hpp"
#include "kostka/rootsystem.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>

namespace kostka {

class MultiplicityCache;

/// Raised when an enumeration would exceed the configured size guard.
class SizeGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineLimits {
  /// Maximum number of dominant weights the Freudenthal pass may hold.
  std::size_t max_dominant_weights = 20'000'000;
};

struct MultiplicityQuery {
  SimpleType type;
  WeightVec lambda;
  WeightVec mu;
};

struct WeightDiagram {
  WeightVec lambda;
  std::map<WeightVec, BigInt> entries;
};

/// Coordinates of lambda - mu in the simple-root basis when they are all
/// nonnegative integers, nothing otherwise.
std::optional<RootCoords> dominance_gap(const RootSystem& rs, const WeightVec& lambda,
                                        const WeightVec& mu);

/// dim V_lambda(mu). mu may be any integral weight; it is moved into the
/// dominant chamber first. With a cache, hits are returned directly and
/// fresh values are appended.
BigInt weight_multiplicity(const RootSystem& rs, const WeightVec& lambda, const WeightVec& mu,
                           MultiplicityCache* cache = nullptr, const EngineLimits& limits = {});

/// Weyl dimension formula.
BigInt irrep_dimension(const RootSystem& rs, const WeightVec& lambda);

/// All dominant weights of V_lambda with their multiplicities.
WeightDiagram weight_diagram(const RootSystem& rs, const WeightVec& lambda,
                             const EngineLimits& limits = {});

}  // namespace kostka
