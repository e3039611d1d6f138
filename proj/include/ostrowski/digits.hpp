#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ostrowski/cf_core.hpp"

namespace ostrowski {

/// Params plus a convergent table large enough for everyday arguments.
///
/// The table covers every value below 2^256 (and well beyond 64 bits);
/// larger arguments extend a private copy on demand. Immutable after
/// construction, so one instance can be shared across threads.
class OstrowskiSystem {
 public:
  explicit OstrowskiSystem(std::int64_t m);
  explicit OstrowskiSystem(AlphaParams params);

  const AlphaParams& params() const { return table_.params; }
  std::int64_t m() const { return table_.params.m; }
  const ConvergentTable& table() const { return table_; }

  /// q_i; extends a temporary table when i exceeds the cached range.
  BigInt q(std::size_t i) const;

  /// q_i when it fits in 64 bits.
  std::optional<std::uint64_t> q_u64(std::size_t i) const;

  Digit digit_cap(std::size_t i) const { return table_.params.digit_cap(i); }

 private:
  ConvergentTable table_;
  std::vector<std::uint64_t> q64_;
};

/// An admissible Ostrowski digit string, least significant digit first.
/// Trailing zero digits are trimmed, so zero has an empty digit vector.
class DigitString {
 public:
  DigitString() = default;

  /// Validates; throws std::invalid_argument naming the first violation.
  static DigitString from_raw(std::vector<Digit> eps, const AlphaParams& params);

  std::span<const Digit> digits() const { return eps_; }
  std::size_t size() const { return eps_.size(); }
  Digit operator[](std::size_t i) const { return i < eps_.size() ? eps_[i] : 0; }

  bool operator==(const DigitString&) const = default;

 private:
  friend DigitString digits_of(const BigInt&, const OstrowskiSystem&);
  friend DigitString digits_of(std::uint64_t, const OstrowskiSystem&);
  explicit DigitString(std::vector<Digit> eps);

  std::vector<Digit> eps_;
};

enum class Violation {
  none,
  lowest_digit_nonzero,   // eps_0 >= a_1
  digit_exceeds_quotient, // eps_i > a_{i+1}
  markov,                 // eps_i == a_{i+1} but eps_{i-1} != 0
};

struct ValidationReport {
  bool ok = true;
  Violation violation = Violation::none;
  std::size_t index = 0;

  std::string describe() const;
};

/// Checks the three admissibility clauses and reports the first violation.
ValidationReport validate(std::span<const Digit> eps, const AlphaParams& params);

/// The unique admissible expansion of n >= 0 (greedy with cap).
DigitString digits_of(const BigInt& n, const OstrowskiSystem& sys);
DigitString digits_of(std::uint64_t n, const OstrowskiSystem& sys);

BigInt value_of(const DigitString& digits, const OstrowskiSystem& sys);

/// Validates first; throws std::invalid_argument on an inadmissible string.
BigInt value_of(std::span<const Digit> eps, const OstrowskiSystem& sys);

/// S_alpha(n), the sum of all digits.
std::uint64_t digit_sum(const BigInt& n, const OstrowskiSystem& sys);

/// S_{alpha,k}(n), the sum of the digits below index k.
std::uint64_t digit_sum_trunc(const BigInt& n, const OstrowskiSystem& sys, std::size_t k);

/// t(n, k), the value of the low k digits; always < q_k.
BigInt truncate(const BigInt& n, const OstrowskiSystem& sys, std::size_t k);

/// Little-endian comma-separated digits ("0,2,0,2"); zero prints as "0".
std::string serialize_digits(std::span<const Digit> eps);

/// Inverse of serialize_digits (no admissibility check).
std::vector<Digit> parse_digits(const std::string& text);

/// Integers whose digits below k all vanish, in increasing order, and their gaps.
struct VSequence {
  std::size_t k = 0;
  std::vector<BigInt> n;    // n_0 = 0 < n_1 < ...
  std::vector<BigInt> gap;  // gap[v - 1] = Q(v) = n_v - n_{v-1}, each in {q_{k-1}, q_k}
};

/// First `count` elements of V; throws std::invalid_argument for k < 2.
VSequence v_sequence(const OstrowskiSystem& sys, std::size_t k, std::size_t count);

}  // namespace ostrowski
