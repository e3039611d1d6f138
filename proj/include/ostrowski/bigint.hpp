#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ostrowski {

// Expression templates off: values behave like plain integers under auto and ?:.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

// Fixed-point fraction of a turn: the value x in [0,1) is stored as
// floor(x * 2^128). Addition and multiplication wrap modulo 1 for free.
using Turns = unsigned __int128;

/// floor(a / b) for b > 0, rounding toward negative infinity.
BigInt floor_div(const BigInt& a, const BigInt& b);

/// Nonnegative remainder a mod b for b > 0.
BigInt floor_mod(const BigInt& a, const BigInt& b);

/// floor(sqrt(y)) for y >= 0.
BigInt isqrt(const BigInt& y);

std::optional<std::uint64_t> to_u64(const BigInt& v);

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Parses a decimal integer with optional sign; throws std::invalid_argument.
BigInt parse_bigint(const std::string& text);

/// Rounds the fixed-point value once to the nearest double in [0,1).
double turns_to_double(Turns t);

/// Fixed-point fractional part of a real number (precision limited by the double).
Turns double_to_turns(double x);

}  // namespace ostrowski
