#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kostka {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Lowest-terms "p/q" with q > 0, or "p" when q = 1.
std::string format_rational(const Rational& r);

/// Accepts "p", "p/q" and "-p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

BigInt parse_bigint(std::string_view text);

inline std::string format_bigint(const BigInt& v) { return v.get_str(); }

/// Parses "1,3,0" (spaces tolerated) into integers.
std::vector<std::int64_t> parse_int_list(std::string_view text);

std::string format_int_list(const std::vector<std::int64_t>& values);

}  // namespace kostka
