#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace ostrowski {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q" or "p"; the result is fully reduced. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

}  // namespace ostrowski
