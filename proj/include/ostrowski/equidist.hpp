#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ostrowski/digits.hpp"
#include "ostrowski/expsum.hpp"
#include "ostrowski/rational.hpp"

namespace ostrowski {

/// Joint residue counts of (S_1(n) mod b1, S_2(n) mod b2) over 0 <= n < N.
struct JointCountReport {
  std::uint64_t N = 0;
  std::int64_t m1 = 0, m2 = 0;
  std::uint64_t b1 = 1, b2 = 1;
  std::vector<std::vector<std::uint64_t>> counts;  // counts[a1][a2]
  double expected = 0;                             // N / (b1 b2)
  double max_rel_dev = 0;                          // max |C b1 b2 / N - 1|
  double mean_rel_dev = 0;
  bool gcd1 = false;  // (b1, m1) = 1
  bool gcd2 = false;  // (b2, m2) = 1

  bool operator==(const JointCountReport&) const = default;
};

JointCountReport joint_counts(std::uint64_t N, const OstrowskiSystem& s1, std::uint64_t b1,
                              const OstrowskiSystem& s2, std::uint64_t b2, unsigned threads = 1,
                              const Budget& budget = {});

/// Counts of S(n) mod b over 0 <= n < N for a single system.
std::vector<std::uint64_t> residue_counts(std::uint64_t N, const OstrowskiSystem& sys, std::uint64_t b,
                                          unsigned threads = 1, const Budget& budget = {});

/// The count matrix recovered from the b1 b2 joint exponential sums with
/// frequencies (j1 / b1, j2 / b2) through additive-character orthogonality.
std::vector<std::vector<double>> counts_via_orthogonality(std::uint64_t N, const OstrowskiSystem& s1,
                                                          std::uint64_t b1, const OstrowskiSystem& s2,
                                                          std::uint64_t b2, unsigned threads = 1,
                                                          const Budget& budget = {});

/// S(n) and S_k(n) for 0 <= n < limit and k <= kmax, filled by one odometer pass.
class TruncatedSumTable {
 public:
  TruncatedSumTable(const OstrowskiSystem& sys, std::uint64_t limit, std::size_t kmax);

  std::uint64_t limit() const { return limit_; }
  std::size_t kmax() const { return kmax_; }
  std::uint32_t full(std::uint64_t n) const { return full_[n]; }
  std::uint32_t trunc(std::uint64_t n, std::size_t k) const { return trunc_[n * (kmax_ + 1) + k]; }

 private:
  std::uint64_t limit_;
  std::size_t kmax_;
  std::vector<std::uint32_t> full_;
  std::vector<std::uint32_t> trunc_;
};

struct MismatchResult {
  std::uint64_t N = 0, r = 0;
  std::size_t k = 0;
  std::uint64_t count = 0;  // n < N with S(n+r) - S(n) != S_k(n+r) - S_k(n)
  BigInt bound_num;         // N r
  BigInt bound_den;         // q_{k-1}
  bool holds = false;       // count <= N r / q_{k-1}, decided exactly

  double bound() const;
};

/// Throws std::invalid_argument for k < 2.
MismatchResult mismatch_count(const OstrowskiSystem& sys, std::uint64_t N, std::size_t k, std::uint64_t r);

/// Same count against a precomputed table (needs N + r <= limit and k <= kmax).
MismatchResult mismatch_count(const TruncatedSumTable& table, const OstrowskiSystem& sys, std::uint64_t N,
                              std::size_t k, std::uint64_t r);

enum class ScanMode { theorem, corollary };

std::string to_string(ScanMode mode);
ScanMode parse_scan_mode(const std::string& text);

struct ScanConfig {
  ScanMode mode = ScanMode::theorem;
  std::int64_t m1 = 2, m2 = 3;
  // theorem mode: frequencies; exact values enable the hypothesis check
  double theta = 0, beta = 0;
  std::optional<Rational> theta_exact, beta_exact;
  // corollary mode: moduli
  std::uint64_t b1 = 1, b2 = 1;
  std::vector<std::uint64_t> grid;
  unsigned threads = 1;
};

/// Error series err(N) and the fitted exponent delta_hat = -slope of log err vs log N.
struct DeltaFit {
  ScanMode mode = ScanMode::theorem;
  std::vector<std::uint64_t> grid;
  std::vector<double> err;
  std::vector<std::complex<double>> sums;          // theorem mode: S_N
  std::vector<JointCountReport> reports;           // corollary mode: one per N
  std::optional<double> delta_hat;                 // empty when fewer than two err > 0
  double residual = 0;                             // RMS residual of the log-log fit
  std::optional<bool> hypothesis_holds;            // empty when the frequencies are not exact
  std::optional<bool> theta_nonintegral;           // m1 theta not an integer (theorem mode)
};

/// Throws std::invalid_argument on a degenerate grid (fewer than four points,
/// not strictly increasing, or containing zero).
DeltaFit delta_scan(const ScanConfig& config, const Budget& budget = {});

/// Ordinary least squares of log err against log N over points with err > 0.
/// Returns (delta_hat, residual), or nullopt with fewer than two usable points.
std::optional<std::pair<double, double>> fit_error_exponent(const std::vector<std::uint64_t>& grid,
                                                            const std::vector<double>& err);

}  // namespace ostrowski
