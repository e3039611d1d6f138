#pragma once

#include <cstdint>
#include <vector>

#include "ostrowski/bigint.hpp"
#include "ostrowski/surd.hpp"

namespace ostrowski {

using Digit = std::uint32_t;

/// The numeration data for alpha = [0; 1, m, 1, m, ...].
///
/// alpha = (-m + sqrt(d)) / 2 and phi = (m + 2 + sqrt(d)) / 2 with d = m^2 + 4m.
/// phi - alpha = m + 1, so ||h*phi|| = ||h*alpha|| for every integer h.
struct AlphaParams {
  std::int64_t m = 0;
  BigInt d;
  Surd alpha;
  Surd phi;

  /// Partial quotient a_i of alpha, i >= 1: a_i = 1 for odd i, m for even i.
  std::int64_t partial_quotient(std::size_t i) const { return (i % 2 == 0) ? m : 1; }

  /// Largest admissible value of digit i (a_{i+1}, except digit 0 which must be 0).
  Digit digit_cap(std::size_t i) const {
    return i == 0 ? 0 : static_cast<Digit>(partial_quotient(i + 1));
  }
};

/// Throws std::invalid_argument for m <= 0.
AlphaParams make_alpha(std::int64_t m);

/// Convergents p_i / q_i of alpha for 0 <= i <= K.
struct ConvergentTable {
  AlphaParams params;
  std::vector<BigInt> q;
  std::vector<BigInt> p;

  std::size_t max_index() const { return q.size() - 1; }
};

/// Throws std::invalid_argument for K < 1.
ConvergentTable convergents(const AlphaParams& params, std::size_t K);

/// phi^e in exact surd arithmetic.
Surd phi_power(const AlphaParams& params, unsigned e);

/// Least-squares slope of log q_i against i over 1 <= i <= K.
/// The recurrence predicts log(phi) / 2 per index.
double fitted_growth_rate(const ConvergentTable& table);

}  // namespace ostrowski
