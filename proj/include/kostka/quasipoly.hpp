#pragma once

#include "kostka/numeric.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kostka {

/// Exact polynomial in N, ascending coefficients, no trailing zeros.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Coefficient of N^i, zero past the degree.
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  Rational operator()(const Rational& x) const;
  Rational operator()(std::int64_t x) const { return (*this)(Rational(static_cast<long>(x))); }

  std::string str() const;

  friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// N -> classes[N mod period](N).
struct QuasiPolynomial {
  int period = 1;
  std::vector<RationalPolynomial> classes;

  int degree() const;
  Rational evaluate(std::int64_t n) const;
  friend bool operator==(const QuasiPolynomial&, const QuasiPolynomial&) = default;
};

struct FitOptions {
  /// Held-out points per residue class, on top of the degree criterion
  /// (which already consumes one point). 0 reproduces the bare criterion.
  int surplus = 2;
  int max_period = 60;
  bool require_integer_outputs = true;
};

struct FitAttempt {
  int period = 0;
  bool ok = false;
  std::string reason;
};

class InsufficientSamples : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FitFailure : public std::runtime_error {
 public:
  FitFailure(const std::string& what, std::vector<FitAttempt> trail)
      : std::runtime_error(what), trail_(std::move(trail)) {}
  const std::vector<FitAttempt>& trail() const { return trail_; }

 private:
  std::vector<FitAttempt> trail_;
};

/// Newton divided differences over Q; unique polynomial of degree < n through
/// the n points. Throws std::invalid_argument on duplicate or missing abscissae.
RationalPolynomial interpolate(std::span<const std::pair<std::int64_t, BigInt>> points);

Rational evaluate(const QuasiPolynomial& qp, std::int64_t n);

/// Residue-class fit at a fixed period over samples[N], N = 0, 1, ...
///
/// Each class interpolates all but its last `surplus` points, must come out
/// of degree at most (points used) - 2, and must reproduce the held-out
/// points. Throws InsufficientSamples if a class has fewer than 2 + surplus
/// points.
std::optional<QuasiPolynomial> fit_fixed_period(std::span<const BigInt> samples, int period,
                                                const FitOptions& opts, std::string* reason = nullptr);

struct PeriodScan {
  QuasiPolynomial fit;
  std::vector<FitAttempt> periods_tested;
};

/// Smallest validating period in 1..max_period. Throws FitFailure with the
/// audit trail when none validates.
PeriodScan fit_minimal_period(std::span<const BigInt> samples, const FitOptions& opts);

/// Most samples a fit of this degree and period needs: each class carries
/// degree + 2 + surplus points.
std::size_t samples_needed(int degree, int period, int surplus);

}  // namespace kostka
