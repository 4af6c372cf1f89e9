#pragma once

#include "kostka/rootsystem.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kostka {

enum class CoordinateFrame { SimpleRoots, FundamentalWeights };

/// sum_i coefficients[i] * x_i == 0 (mod modulus), x read in the lattice's frame.
struct Congruence {
  std::vector<std::int64_t> coefficients;
  std::int64_t modulus = 1;
};

/// Lattice of weights whose line bundle descends to the torus quotient of
/// G/P_lambda, written as congruence conditions.
struct DescentLattice {
  SimpleType type;
  CoordinateFrame frame = CoordinateFrame::SimpleRoots;
  std::vector<Congruence> conditions;
  /// Order bound for any vector of the ambient lattice modulo this one.
  std::int64_t exponent_bound = 1;
};

/// Throws std::invalid_argument for B2 (use C2) and other types the
/// classification does not cover.
DescentLattice descent_lattice_for(SimpleType type);

/// Membership; root-frame lattices reject weights outside the root lattice.
bool contains(const DescentLattice& lat, const RootSystem& rs, const WeightVec& w);

/// Smallest d >= 1 with d*v in the lattice. Throws std::invalid_argument when
/// v is outside the ambient lattice of the frame.
std::int64_t minimal_descent_multiple(const DescentLattice& lat, const RootSystem& rs, const WeightVec& v);

/// minimal_descent_multiple of lambda - mu. When lambda - mu is outside the
/// root lattice, q times the multiple of q(lambda - mu), q the lattice index.
/// A proven period when mu = 0; a candidate otherwise. Throws
/// std::invalid_argument when no stretch of mu lies below lambda.
std::int64_t period_candidate(const RootSystem& rs, const WeightVec& lambda, const WeightVec& mu);

std::string describe(const DescentLattice& lat);

}  // namespace kostka
