#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "ostrowski/cf_core.hpp"

namespace ostrowski {

/// Both sides of the Fejer kernel identity
///   sum_{|r|<R} (R - |r|) e(r x) = |sum_{0<=r<R} e(r x)|^2.
struct FejerCheck {
  std::complex<double> lhs;
  double rhs = 0;
};

/// Throws std::invalid_argument for R < 1.
FejerCheck fejer_check(double x, std::uint64_t R);

/// Both sides of the Weyl-van der Corput inequality
///   |sum a_n|^2 <= (N-1+R)/R sum_{|r|<R} (1 - |r|/R) sum_n a_{n+r} conj(a_n).
struct VanDerCorputCheck {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;  // lhs <= rhs + 1e-6 N^2
};

VanDerCorputCheck weyl_vdc_check(std::span<const std::complex<double>> a, std::uint64_t R);

/// sum_{h in [lo, hi]} min(K, ||t + h phi||^-2) and the two terms of its bound.
struct MinNormSum {
  double lhs = 0;
  double sqrt_k_len = 0;  // sqrt(K) |I|
  double k_log_len = 0;   // K log |I|
  double ratio = 0;       // lhs / (sqrt_k_len + k_log_len)
};

/// Throws std::invalid_argument unless K >= 1 and hi - lo + 1 >= 2.
MinNormSum min_norm_sum(const AlphaParams& params, double t, std::int64_t lo, std::int64_t hi, double K);

/// min over 0 < max(|h2|, |h4|) <= H of ||h2 phi_2 + h4 phi_1|| * max(|h2|, |h4|)^(2 + eps).
struct SchmidtMargin {
  double margin = 0;
  std::int64_t h2 = 0, h4 = 0;  // a minimizing pair
  double distance = 0;          // ||h2 phi_2 + h4 phi_1|| at the minimizer
  double error_bound = 0;       // certified bound on the error of every distance
  double epsilon = 0.1;
};

/// Throws std::invalid_argument if the two systems coincide or H < 1.
SchmidtMargin schmidt_margin(const AlphaParams& p1, const AlphaParams& p2, std::uint64_t H, double epsilon = 0.1);

}  // namespace ostrowski
