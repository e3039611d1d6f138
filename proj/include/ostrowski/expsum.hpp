#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ostrowski/digits.hpp"

namespace ostrowski {

/// Size caps for the long-running operations.
struct Budget {
  std::uint64_t max_n = 1'000'000'000;        // scan length for sums and counts
  std::uint64_t max_decay_q = 10'000'000;     // q_kmax in single_decay
  std::uint64_t max_dft_q = 1U << 14;         // block length Q(v) in dft_window
  std::uint64_t max_msum_work = 100'000'000;  // q_k * H for the M-sums

  /// Defaults, with max_n overridden by the OSTROWSKI_BUDGET environment variable.
  static Budget from_env();
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& cap, const std::string& requested, std::uint64_t limit);
};

/// Compensated (Neumaier) accumulation of complex terms.
class ComplexSum {
 public:
  void add(std::complex<double> z) {
    add_one(re_, re_c_, z.real());
    add_one(im_, im_c_, z.imag());
  }
  void add(const ComplexSum& o) {
    add_one(re_, re_c_, o.re_);
    add_one(re_, re_c_, o.re_c_);
    add_one(im_, im_c_, o.im_);
    add_one(im_, im_c_, o.im_c_);
  }
  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_one(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

/// e(x) = exp(2 pi i x), with x reduced mod 1 first.
std::complex<double> unit(double turns);
std::complex<double> unit(Turns turns);

/// sum_{n<N} e(theta S_1(n) + beta S_2(n)), streamed with two odometers.
std::complex<double> joint_exp_sum(std::uint64_t N, double theta, double beta, const OstrowskiSystem& s1,
                                   const OstrowskiSystem& s2, unsigned threads = 1, const Budget& budget = {});

struct ExpSumPoint {
  std::uint64_t N = 0;
  std::complex<double> value;
  double modulus = 0;
  double normalized = 0;  // |S| / N
};

struct ExpSumSeries {
  std::int64_t m1 = 0, m2 = 0;
  double theta = 0, beta = 0;
  std::vector<ExpSumPoint> points;
};

ExpSumSeries joint_exp_series(const std::vector<std::uint64_t>& grid, double theta, double beta,
                              const OstrowskiSystem& s1, const OstrowskiSystem& s2, unsigned threads = 1,
                              const Budget& budget = {});

struct DecayPoint {
  std::size_t k = 0;
  std::uint64_t q_k = 0;
  double D = 0;  // |(1/q_k) sum_{u<q_k} e(gamma S(u) + theta u)|
};

struct DecaySeries {
  std::int64_t m = 0;
  double gamma = 0, theta = 0;
  bool hypothesis_holds = false;  // ||m gamma|| != 0
  std::vector<DecayPoint> points;
  double slope = 0;  // least-squares slope of log D_k against k
};

/// D_k for kmin <= k <= kmax. Throws BudgetExceeded if q_kmax is over the cap.
DecaySeries single_decay(const OstrowskiSystem& sys, double gamma, double theta, std::size_t kmax,
                         std::size_t kmin = 2, const Budget& budget = {});

enum class PhaseBase { phi, alpha };

/// (M1, M2): sums of e(theta S(u) - (-1)^k h u phi) over [0, q_{k-1}) and
/// [q_{k-1}, q_k). `base` swaps phi for alpha, which changes no phase.
std::pair<std::complex<double>, std::complex<double>> m_sums(const OstrowskiSystem& sys, std::size_t k,
                                                             const BigInt& h, double theta,
                                                             PhaseBase base = PhaseBase::phi,
                                                             const Budget& budget = {});

/// The h = 0 coefficients (b1(0), b2(0)), exactly and as doubles.
struct BZero {
  Surd b1, b2;
  double b1_value = 0, b2_value = 0;
};

/// Throws std::invalid_argument for k < 2.
BZero b_zero(const AlphaParams& params, std::size_t k);

/// Discrete Fourier coefficients of u -> e(theta S_{alpha,k}(u + n_{v-1})) on one V block.
struct SpectrumL {
  std::size_t k = 0;
  std::size_t v = 0;
  double theta = 0;
  std::uint64_t start = 0;  // n_{v-1}
  std::uint64_t Q = 0;      // n_v - n_{v-1}
  std::vector<std::complex<double>> L;
};

SpectrumL dft_window(const OstrowskiSystem& sys, std::size_t k, std::size_t v, double theta,
                     const Budget& budget = {});

/// sum_{l<Q} L(l) e(l n / Q).
std::complex<double> reconstruct(const SpectrumL& spectrum, std::uint64_t n);

}  // namespace ostrowski
