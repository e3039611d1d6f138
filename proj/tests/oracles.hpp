// Independent reference computations for the test suites. Nothing here calls
// into the greedy expansion or the odometer unless the oracle is explicitly a
// per-n evaluation built on digits_of.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ostrowski/digits.hpp"

namespace oracle {

using Float256 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>>;

// q_i straight from the recurrence, in 64 bits.
inline std::vector<std::uint64_t> q_table(std::uint64_t m, std::uint64_t bound) {
  std::vector<std::uint64_t> q{1, 1};
  while (q.back() <= bound) {
    const std::size_t i = q.size();
    q.push_back((i % 2 == 0 ? m : 1) * q[i - 1] + q[i - 2]);
  }
  return q;
}

// Every digit vector of length L obeying the Markov condition with value
// below `limit`, grouped by value. Built by depth-first search from the top
// digit; never consults the greedy expansion.
inline std::map<std::uint64_t, std::vector<std::vector<ostrowski::Digit>>> enumerate_admissible(
    std::uint64_t m, std::uint64_t limit) {
  const auto q = q_table(m, limit);
  const std::size_t L = q.size();  // q[L-1] > limit, so no digit at index >= L is possible
  auto cap = [m](std::size_t i) -> std::uint64_t { return i == 0 ? 0 : ((i + 1) % 2 == 0 ? m : 1); };
  std::map<std::uint64_t, std::vector<std::vector<ostrowski::Digit>>> out;
  std::vector<ostrowski::Digit> eps(L, 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t pos, std::uint64_t value) {
    // pos is the next index to fill, counting down; value so far
    for (std::uint64_t e = 0; e <= cap(pos); ++e) {
      const std::uint64_t v = value + e * q[pos];
      if (v >= limit) break;
      if (pos + 1 < L && eps[pos + 1] == cap(pos + 1) && e != 0) break;  // Markov
      eps[pos] = static_cast<ostrowski::Digit>(e);
      if (pos == 0) {
        std::vector<ostrowski::Digit> trimmed = eps;
        while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
        out[v].push_back(trimmed);
      } else {
        rec(pos - 1, v);
      }
      eps[pos] = 0;
    }
  };
  rec(L - 1, 0);
  return out;
}

// {h * (a + b sqrt d) / c} at 256-bit precision.
inline Float256 frac_256(long long h, const ostrowski::Surd& s) {
  Float256 x = Float256(h) * (Float256(s.a()) + Float256(s.b()) * sqrt(Float256(s.radicand()))) / Float256(s.c());
  return x - floor(x);
}

inline std::complex<double> unit(double turns) {
  const double t = turns - std::floor(turns);
  return std::polar(1.0, 2.0 * M_PI * t);
}

// sum_{n<N} e(theta S1(n) + beta S2(n)), each S from a fresh digits_of call.
inline std::complex<double> naive_joint_sum(std::uint64_t N, double theta, double beta,
                                            const ostrowski::OstrowskiSystem& s1,
                                            const ostrowski::OstrowskiSystem& s2) {
  std::complex<double> acc = 0;
  for (std::uint64_t n = 0; n < N; ++n) {
    const auto a = ostrowski::digit_sum(n, s1);
    const auto b = ostrowski::digit_sum(n, s2);
    acc += unit(theta * static_cast<double>(a) + beta * static_cast<double>(b));
  }
  return acc;
}

inline std::vector<std::vector<std::uint64_t>> naive_counts(std::uint64_t N, const ostrowski::OstrowskiSystem& s1,
                                                            std::uint64_t b1, const ostrowski::OstrowskiSystem& s2,
                                                            std::uint64_t b2) {
  std::vector<std::vector<std::uint64_t>> c(b1, std::vector<std::uint64_t>(b2, 0));
  for (std::uint64_t n = 0; n < N; ++n) ++c[ostrowski::digit_sum(n, s1) % b1][ostrowski::digit_sum(n, s2) % b2];
  return c;
}

}  // namespace oracle
