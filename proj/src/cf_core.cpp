#include "ostrowski/cf_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ostrowski {

AlphaParams make_alpha(std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("make_alpha: m must be >= 1, got " + std::to_string(m));
  const BigInt mm = m;
  const BigInt d = mm * mm + 4 * mm;
  return AlphaParams{m, d, Surd(-mm, 1, 2, d), Surd(mm + 2, 1, 2, d)};
}

ConvergentTable convergents(const AlphaParams& params, std::size_t K) {
  if (K < 1) throw std::invalid_argument("convergents: K must be >= 1");
  ConvergentTable t{params, {}, {}};
  t.q.reserve(K + 1);
  t.p.reserve(K + 1);
  // q_{-1} = 0, q_0 = 1, p_{-1} = 1, p_0 = a_0 = 0.
  BigInt q_prev = 0, p_prev = 1;
  t.q.emplace_back(1);
  t.p.emplace_back(0);
  for (std::size_t i = 1; i <= K; ++i) {
    const BigInt a = params.partial_quotient(i);
    BigInt qi = a * t.q.back() + q_prev;
    BigInt pi = a * t.p.back() + p_prev;
    q_prev = t.q.back();
    p_prev = t.p.back();
    t.q.push_back(std::move(qi));
    t.p.push_back(std::move(pi));
  }
  return t;
}

Surd phi_power(const AlphaParams& params, unsigned e) { return params.phi.pow(e); }

double fitted_growth_rate(const ConvergentTable& table) {
  const std::size_t K = table.max_index();
  if (K < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(K);
  for (std::size_t i = 1; i <= K; ++i) {
    const double x = static_cast<double>(i);
    // log of an arbitrary-precision integer via its bit length
    const std::size_t bits = boost::multiprecision::msb(table.q[i]) + 1;
    const std::size_t shift = bits > 60 ? bits - 60 : 0;
    const double y = std::log(static_cast<double>(table.q[i] >> shift)) + static_cast<double>(shift) * std::log(2.0);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace ostrowski
