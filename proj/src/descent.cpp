#include "kostka/descent.hpp"

#include "kostka/multiplicity.hpp"

#include <stdexcept>

namespace kostka {

namespace {

Congruence single(int rank, int index, std::int64_t modulus) {
  Congruence c;
  c.coefficients.assign(rank, 0);
  c.coefficients[index] = 1;
  c.modulus = modulus;
  return c;
}

std::vector<Congruence> every(int rank, std::int64_t modulus) {
  std::vector<Congruence> out;
  for (int i = 0; i < rank; ++i) out.push_back(single(rank, i, modulus));
  return out;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

bool satisfies(const DescentLattice& lat, const std::vector<std::int64_t>& x, std::int64_t scale) {
  for (const auto& c : lat.conditions) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += floor_mod(c.coefficients[i] * x[i], c.modulus);
    if (floor_mod(scale * floor_mod(s, c.modulus), c.modulus) != 0) return false;
  }
  return true;
}

// Coordinates in the lattice's frame; nullopt when outside its ambient lattice.
std::optional<std::vector<std::int64_t>> frame_coords(const DescentLattice& lat, const RootSystem& rs,
                                                      const WeightVec& w) {
  rs.check_length(w);
  if (lat.frame == CoordinateFrame::FundamentalWeights) return w.coords;
  auto rc = rs.to_root_coords(w);
  if (!rc.is_integral()) return std::nullopt;
  return rc.as_integers();
}

}  // namespace

DescentLattice descent_lattice_for(SimpleType type) {
  type = SimpleType::make(type.family, type.rank);
  const int l = type.rank;
  DescentLattice lat;
  lat.type = type;
  switch (type.family) {
    case Family::A:
      lat.exponent_bound = 1;
      break;
    case Family::B:
      if (l < 3) throw std::invalid_argument("no descent lattice listed for B2; use the isomorphic type C2");
      lat.conditions = every(l, 2);
      lat.exponent_bound = 2;
      break;
    case Family::C:
      for (int i = 0; i + 1 < l; ++i) lat.conditions.push_back(single(l, i, 2));
      lat.exponent_bound = 2;
      break;
    case Family::D:
      if (l == 4) {
        lat.conditions.push_back(single(l, 1, 2));
        lat.conditions.push_back(Congruence{{1, 0, 1, 1}, 2});
      } else {
        for (int i = 0; i + 2 < l; ++i) lat.conditions.push_back(single(l, i, 2));
        Congruence tail;
        tail.coefficients.assign(l, 0);
        tail.coefficients[l - 2] = 1;
        tail.coefficients[l - 1] = 1;
        tail.modulus = 2;
        lat.conditions.push_back(tail);
      }
      lat.exponent_bound = 2;
      break;
    case Family::G:
      lat.conditions = {single(l, 0, 6), single(l, 1, 2)};
      lat.exponent_bound = 6;
      break;
    case Family::F:
      lat.conditions = {single(l, 0, 6), single(l, 1, 6), single(l, 2, 12), single(l, 3, 12)};
      lat.exponent_bound = 12;
      break;
    case Family::E:
      if (l == 8) {
        lat.conditions = every(l, 60);
        lat.exponent_bound = 60;
      } else {
        lat.frame = CoordinateFrame::FundamentalWeights;
        lat.exponent_bound = l == 6 ? 6 : 12;
        lat.conditions = every(l, lat.exponent_bound);
      }
      break;
  }
  return lat;
}

bool contains(const DescentLattice& lat, const RootSystem& rs, const WeightVec& w) {
  if (!(rs.type() == lat.type)) throw std::invalid_argument("lattice and root system types differ");
  auto x = frame_coords(lat, rs, w);
  return x && satisfies(lat, *x, 1);
}

std::int64_t minimal_descent_multiple(const DescentLattice& lat, const RootSystem& rs, const WeightVec& v) {
  if (!(rs.type() == lat.type)) throw std::invalid_argument("lattice and root system types differ");
  auto x = frame_coords(lat, rs, v);
  if (!x) throw std::invalid_argument("weight " + v.str() + " is not in the root lattice");
  for (std::int64_t d = 1; d <= lat.exponent_bound; ++d) {
    if (satisfies(lat, *x, d)) return d;
  }
  throw std::logic_error("exponent bound violated for " + lat.type.name());
}

std::int64_t period_candidate(const RootSystem& rs, const WeightVec& lambda, const WeightVec& mu) {
  auto rc = rs.to_root_coords(lambda - mu);
  BigInt q = 1;
  for (const auto& c : rc.coords) {
    if (c < 0) throw std::invalid_argument("no stretch of " + mu.str() + " lies below " + lambda.str());
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.get_den_mpz_t());
  }
  const std::int64_t index = q.get_si();
  return index * minimal_descent_multiple(descent_lattice_for(rs.type()), rs, index * (lambda - mu));
}

std::string describe(const DescentLattice& lat) {
  std::string s = lat.type.name() + ": ";
  s += lat.frame == CoordinateFrame::SimpleRoots ? "alpha-frame" : "varpi-frame";
  if (lat.conditions.empty()) s += ", root lattice";
  for (const auto& c : lat.conditions) {
    s += "; ";
    bool first = true;
    for (std::size_t i = 0; i < c.coefficients.size(); ++i) {
      if (c.coefficients[i] == 0) continue;
      if (!first) s += "+";
      if (c.coefficients[i] != 1) s += std::to_string(c.coefficients[i]);
      s += "x" + std::to_string(i + 1);
      first = false;
    }
    s += " = 0 mod " + std::to_string(c.modulus);
  }
  return s;
}

}  // namespace kostka
