#include "ostrowski/lemmas.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

#include "ostrowski/expsum.hpp"

namespace ostrowski {
namespace {

using Wide = boost::multiprecision::int512_t;

double frac(double x) { return x - std::floor(x); }

}  // namespace

FejerCheck fejer_check(double x, std::uint64_t R) {
  if (R < 1) throw std::invalid_argument("fejer_check: R must be >= 1");
  ComplexSum lhs, partial;
  const auto r_max = static_cast<std::int64_t>(R);
  for (std::int64_t r = -(r_max - 1); r < r_max; ++r) {
    lhs.add(static_cast<double>(r_max - std::abs(r)) * unit(frac(static_cast<double>(r) * x)));
  }
  for (std::int64_t r = 0; r < r_max; ++r) partial.add(unit(frac(static_cast<double>(r) * x)));
  return {lhs.value(), std::norm(partial.value())};
}

VanDerCorputCheck weyl_vdc_check(std::span<const std::complex<double>> a, std::uint64_t R) {
  if (R < 1) throw std::invalid_argument("weyl_vdc_check: R must be >= 1");
  const auto N = static_cast<std::int64_t>(a.size());
  const auto Ri = static_cast<std::int64_t>(R);
  ComplexSum total, corr_sum;
  for (const auto& z : a) total.add(z);
  for (std::int64_t r = -(Ri - 1); r < Ri; ++r) {
    ComplexSum corr;
    for (std::int64_t n = std::max<std::int64_t>(0, -r); n < N && n + r < N; ++n) {
      corr.add(a[static_cast<std::size_t>(n + r)] * std::conj(a[static_cast<std::size_t>(n)]));
    }
    corr_sum.add((1.0 - static_cast<double>(std::abs(r)) / static_cast<double>(Ri)) * corr.value());
  }
  VanDerCorputCheck out;
  out.lhs = std::norm(total.value());
  out.rhs = static_cast<double>(N - 1 + Ri) / static_cast<double>(Ri) * corr_sum.value().real();
  out.holds = out.lhs <= out.rhs + 1e-6 * static_cast<double>(N) * static_cast<double>(N);
  return out;
}

MinNormSum min_norm_sum(const AlphaParams& params, double t, std::int64_t lo, std::int64_t hi, double K) {
  if (!(K >= 1)) throw std::invalid_argument("min_norm_sum: K must be >= 1");
  if (hi < lo + 1) throw std::invalid_argument("min_norm_sum: the interval needs at least two integers");
  const Turns step = frac_mul_turns(1, params.phi);
  Turns x = frac_mul_turns(lo, params.phi) + double_to_turns(t);
  double sum = 0, comp = 0;
  for (std::int64_t h = lo; h <= hi; ++h, x += step) {
    const double d = turns_dist_nearest(x);
    const double term = d * d * K <= 1.0 ? K : 1.0 / (d * d);
    const double s = sum + term;  // terms are positive; Kahan is enough
    comp += (sum - s) + term;
    sum = s;
  }
  MinNormSum out;
  const double len = static_cast<double>(hi - lo + 1);
  out.lhs = sum + comp;
  out.sqrt_k_len = std::sqrt(K) * len;
  out.k_log_len = K * std::log(len);
  out.ratio = out.lhs / (out.sqrt_k_len + out.k_log_len);
  return out;
}

SchmidtMargin schmidt_margin(const AlphaParams& p1, const AlphaParams& p2, std::uint64_t H, double epsilon) {
  if (p1.m == p2.m) throw std::invalid_argument("schmidt_margin: m1 and m2 must differ");
  if (H < 1) throw std::invalid_argument("schmidt_margin: H must be >= 1");

  // 2 (h2 phi2 + h4 phi1) = h2 (m2 + 2) + h4 (m1 + 2) + h2 sqrt(d2) + h4 sqrt(d1).
  // With s = floor(sqrt(d) 2^P), h sqrt(d) 2^P lies between h s and h (s + 1).
  constexpr unsigned P = 256;
  const Wide s1 = Wide(isqrt(p1.d << (2 * P)));
  const Wide s2 = Wide(isqrt(p2.d << (2 * P)));
  const Wide one = Wide(1) << (P + 1);  // one unit of the value being measured
  const Wide half = one >> 1;

  auto dist = [&](const Wide& y) {
    Wide r = y % one;
    if (r < 0) r += one;
    return r <= half ? r : one - r;
  };

  // ||.|| is monotone between consecutive multiples of 1/2
  auto segment = [&](const Wide& y) {
    Wide q = y / half;
    if (y < 0 && q * half != y) --q;
    return q;
  };

  SchmidtMargin best;
  best.epsilon = epsilon;
  best.margin = INFINITY;
  const auto Hi = static_cast<std::int64_t>(H);
  double worst_width = 0;
  for (std::int64_t h4 = 0; h4 <= Hi; ++h4) {
    // x and -x share ||.||, so h4 >= 0 and, on h4 = 0, h2 > 0 cover every pair
    for (std::int64_t h2 = (h4 == 0 ? 1 : -Hi); h2 <= Hi; ++h2) {
      const Wide integer_part = (Wide(h2) * (p2.m + 2) + Wide(h4) * (p1.m + 2)) << P;
      const Wide base = integer_part + Wide(h2) * s2 + Wide(h4) * s1;
      const Wide lo = base + (h2 < 0 ? Wide(h2) : Wide(0)) + (h4 < 0 ? Wide(h4) : Wide(0));
      const Wide hi = base + (h2 > 0 ? Wide(h2) : Wide(0)) + (h4 > 0 ? Wide(h4) : Wide(0));
      const Wide d_lo = dist(lo), d_hi = dist(hi);
      // Both endpoints must sit on the same monotone piece of ||.||.
      if (segment(lo) != segment(hi)) {
        throw std::logic_error("schmidt_margin: precision insufficient to certify a distance");
      }
      const Wide d_min = d_lo < d_hi ? d_lo : d_hi;
      const double d = std::ldexp(static_cast<double>(d_min), -static_cast<int>(P + 1));
      const double width = std::ldexp(static_cast<double>(hi - lo), -static_cast<int>(P + 1));
      worst_width = std::max(worst_width, width);
      const double h = static_cast<double>(std::max(std::abs(h2), h4));
      const double value = d * std::pow(h, 2.0 + epsilon);
      if (value < best.margin) {
        best.margin = value;
        best.h2 = h2;
        best.h4 = h4;
        best.distance = d;
      }
    }
  }
  best.error_bound = worst_width;
  return best;
}

}  // namespace ostrowski
