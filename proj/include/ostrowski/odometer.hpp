#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ostrowski/digits.hpp"

namespace ostrowski {

/// Replaces an admissible digit vector (digits below `lowest` must be zero)
/// by the next admissible vector in value order among those whose digits
/// below `lowest` are zero. Returns the change in the digit sum.
///
/// Admissible strings compare by value exactly as they compare
/// lexicographically from the top digit, so the successor increments the
/// lowest position that can legally grow and clears everything beneath it.
std::int64_t advance_digits(std::vector<Digit>& eps, const AlphaParams& params, std::size_t lowest = 0);

/// Streams the expansions of start, start + 1, start + 2, ... with amortized
/// O(1) digit updates per step. Single-owner mutable state.
class Odometer {
 public:
  explicit Odometer(const OstrowskiSystem& sys, const BigInt& start = 0);
  Odometer(const OstrowskiSystem& sys, std::uint64_t start);

  void next();

  const BigInt& n() const { return n_; }
  std::span<const Digit> digits() const { return {eps_.data(), top_}; }
  std::uint64_t digit_sum() const { return sum_; }

  /// S_{alpha,k}(n).
  std::uint64_t digit_sum_below(std::size_t k) const;

 private:
  const AlphaParams* params_;
  BigInt n_;
  std::vector<Digit> eps_;  // zero padded beyond top_
  std::size_t top_ = 0;     // digits at index >= top_ are zero
  std::uint64_t sum_ = 0;
};

}  // namespace ostrowski
