#include "ostrowski/bigint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ostrowski {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
  BigInt q = a / b;  // truncates toward zero
  if (a < 0 && q * b != a) --q;
  return q;
}

BigInt floor_mod(const BigInt& a, const BigInt& b) { return a - floor_div(a, b) * b; }

BigInt isqrt(const BigInt& y) {
  if (y < 0) throw std::invalid_argument("isqrt: negative argument");
  return boost::multiprecision::sqrt(y);
}

std::optional<std::uint64_t> to_u64(const BigInt& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(v);
}

BigInt parse_bigint(const std::string& text) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw std::invalid_argument("not an integer: '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') throw std::invalid_argument("not an integer: '" + text + "'");
  }
  return BigInt(text);
}

double turns_to_double(Turns t) {
  const double v = std::ldexp(static_cast<double>(t), -128);
  return v < 1.0 ? v : std::nextafter(1.0, 0.0);
}

Turns double_to_turns(double x) {
  double f = x - std::floor(x);
  if (!(f < 1.0)) f = 0.0;
  const auto hi = static_cast<std::uint64_t>(std::ldexp(f, 64));
  return static_cast<Turns>(hi) << 64;
}

}  // namespace ostrowski
