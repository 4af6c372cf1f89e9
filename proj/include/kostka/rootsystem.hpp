#pragma once

#include "kostka/numeric.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kostka {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// Cartan type of a simple Lie algebra, e.g. B3 or E8.
struct SimpleType {
  Family family = Family::A;
  int rank = 1;

  /// Throws std::invalid_argument for pairs outside the family's range.
  static SimpleType make(Family family, int rank);
  /// Parses "G2", "b3", "E8".
  static SimpleType parse(std::string_view text);

  std::string name() const;

  friend auto operator<=>(const SimpleType&, const SimpleType&) = default;
};

/// Integral weight in the fundamental-weight basis.
struct WeightVec {
  std::vector<std::int64_t> coords;

  WeightVec() = default;
  explicit WeightVec(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  WeightVec(std::initializer_list<std::int64_t> c) : coords(c) {}

  static WeightVec zero(int rank) { return WeightVec(std::vector<std::int64_t>(rank, 0)); }

  std::size_t size() const { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }
  std::int64_t& operator[](std::size_t i) { return coords[i]; }

  bool is_dominant() const;
  bool is_zero() const;

  WeightVec& operator+=(const WeightVec& o);
  WeightVec& operator-=(const WeightVec& o);
  friend WeightVec operator+(WeightVec a, const WeightVec& b) { return a += b; }
  friend WeightVec operator-(WeightVec a, const WeightVec& b) { return a -= b; }
  friend WeightVec operator*(std::int64_t s, WeightVec a) {
    for (auto& x : a.coords) x *= s;
    return a;
  }
  friend bool operator==(const WeightVec&, const WeightVec&) = default;
  friend auto operator<=>(const WeightVec&, const WeightVec&) = default;

  std::string str() const;
};

/// Rational coordinates in the simple-root basis.
struct RootCoords {
  std::vector<Rational> coords;

  std::size_t size() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }
  bool is_integral() const;
  bool is_nonnegative_integral() const;
  /// Integer coordinates; throws std::domain_error if not integral.
  std::vector<std::int64_t> as_integers() const;
  friend bool operator==(const RootCoords&, const RootCoords&) = default;
};

struct DominantResult {
  WeightVec weight;
  std::size_t reflections = 0;
};

struct SubsystemStats {
  std::size_t positive_roots = 0;
  std::size_t rank = 0;
};

class OrbitTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable Cartan datum of a simple type, Bourbaki labelling.
///
/// Conventions: a_ij = <alpha_j, alpha_i^vee>, so column j of the Cartan matrix
/// holds alpha_j in fundamental-weight coordinates. Simple-root indices are
/// zero-based in this API; reports print them one-based.
class RootSystem {
 public:
  explicit RootSystem(SimpleType type);

  const SimpleType& type() const { return type_; }
  int rank() const { return type_.rank; }

  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  const std::vector<std::vector<Rational>>& inverse_cartan() const { return inv_cartan_; }
  /// Simple-root coordinates, sorted by height then lexicographically.
  const std::vector<std::vector<int>>& positive_roots() const { return positive_roots_; }
  /// Same roots, fundamental-weight coordinates.
  const std::vector<WeightVec>& positive_roots_weight() const { return positive_roots_weight_; }
  /// d_i with d_i a_ij = d_j a_ji, gcd 1; (alpha_i, alpha_i) = 2 d_i.
  const std::vector<int>& symmetrizer() const { return symmetrizer_; }
  const BigInt& weyl_order() const { return weyl_order_; }
  std::size_t root_count() const { return 2 * positive_roots_.size(); }

  RootCoords to_root_coords(const WeightVec& w) const;
  std::vector<Rational> to_weight_coords(const RootCoords& r) const;

  /// <w, alpha_i^vee>
  std::int64_t pairing(const WeightVec& w, int i) const;

  /// Symmetrized form (w, beta) for a weight and a root given in simple-root
  /// coordinates; integer-valued for integral w.
  std::int64_t form_with_root(const WeightVec& w, std::span<const int> root) const;
  /// Symmetrized form (u, v) of two weights, exact.
  Rational form(const WeightVec& u, const WeightVec& v) const;

  /// Applies s_i to w in place.
  void reflect(WeightVec& w, int i) const;
  DominantResult dominant_representative(WeightVec w) const;

  /// |W . w| for dominant w, as |W| / |W_stab|.
  BigInt orbit_size(const WeightVec& dominant) const;
  /// |W . w| by breadth-first closure under simple reflections; throws
  /// OrbitTooLarge once more than max_elements weights have been seen.
  BigInt orbit_size_by_closure(const WeightVec& w, std::size_t max_elements = 1'000'000) const;

  /// Counts positive roots supported inside `indices`.
  SubsystemStats subsystem_stats(std::span<const int> indices) const;
  /// Order of the parabolic subgroup W_S.
  BigInt parabolic_weyl_order(std::span<const int> indices) const;

  void check_length(const WeightVec& w) const;

 private:
  void generate_positive_roots();
  void compute_symmetrizer();
  void self_test() const;

  SimpleType type_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<Rational>> inv_cartan_;
  std::vector<std::vector<int>> positive_roots_;
  std::vector<WeightVec> positive_roots_weight_;
  std::vector<int> symmetrizer_;
  BigInt weyl_order_;
};

/// Cartan matrix of the given type, Bourbaki numbering.
std::vector<std::vector<int>> cartan_matrix(SimpleType type);

/// Classical |Phi^+| per type.
std::size_t expected_positive_root_count(SimpleType type);

}  // namespace kostka
