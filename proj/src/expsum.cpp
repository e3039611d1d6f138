#include "ostrowski/expsum.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "ostrowski/odometer.hpp"
#include "ostrowski/parallel.hpp"

namespace ostrowski {
namespace {

double frac(double x) { return x - std::floor(x); }

void check_cap(const std::string& cap, const std::string& what, std::uint64_t requested, std::uint64_t limit) {
  if (requested > limit) throw BudgetExceeded(cap, what + " = " + std::to_string(requested), limit);
}

std::uint64_t require_u64(const BigInt& v, const std::string& what) {
  const auto r = to_u64(v);
  if (!r) throw BudgetExceeded("64-bit range", what + " = " + v.str(), UINT64_MAX);
  return *r;
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  if (const char* env = std::getenv("OSTROWSKI_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw std::invalid_argument(std::string("OSTROWSKI_BUDGET must be a positive integer, got '") + env + "'");
    }
    b.max_n = v;
  }
  return b;
}

BudgetExceeded::BudgetExceeded(const std::string& cap, const std::string& requested, std::uint64_t limit)
    : std::runtime_error("budget exceeded: " + requested + " is over the " + cap + " cap of " +
                         std::to_string(limit)) {}

std::complex<double> unit(double turns) {
  // reduce to [-1/2, 1/2) so the argument to sin/cos stays small
  double t = frac(turns);
  if (t >= 0.5) t -= 1.0;
  const double a = 2.0 * std::numbers::pi * t;
  return {std::cos(a), std::sin(a)};
}

std::complex<double> unit(Turns turns) {
  // the signed reinterpretation maps [1/2, 1) onto [-1/2, 0)
  const auto hi = static_cast<std::int64_t>(static_cast<std::uint64_t>(turns >> 64));
  return unit(std::ldexp(static_cast<double>(hi), -64));
}

std::complex<double> joint_exp_sum(std::uint64_t N, double theta, double beta, const OstrowskiSystem& s1,
                                   const OstrowskiSystem& s2, unsigned threads, const Budget& budget) {
  check_cap("max_n", "N", N, budget.max_n);
  const auto blocks = run_blocks<ComplexSum>(N, threads, [&](std::uint64_t begin, std::uint64_t end) {
    Odometer o1(s1, begin), o2(s2, begin);
    ComplexSum acc;
    for (std::uint64_t n = begin; n < end; ++n) {
      const double phase = frac(theta * static_cast<double>(o1.digit_sum())) +
                           frac(beta * static_cast<double>(o2.digit_sum()));
      acc.add(unit(phase));
      o1.next();
      o2.next();
    }
    return acc;
  });
  ComplexSum total;
  for (const ComplexSum& b : blocks) total.add(b);
  return total.value();
}

ExpSumSeries joint_exp_series(const std::vector<std::uint64_t>& grid, double theta, double beta,
                              const OstrowskiSystem& s1, const OstrowskiSystem& s2, unsigned threads,
                              const Budget& budget) {
  ExpSumSeries series{s1.m(), s2.m(), theta, beta, {}};
  for (std::uint64_t N : grid) {
    ExpSumPoint pt;
    pt.N = N;
    pt.value = joint_exp_sum(N, theta, beta, s1, s2, threads, budget);
    pt.modulus = std::abs(pt.value);
    pt.normalized = N == 0 ? 0.0 : pt.modulus / static_cast<double>(N);
    series.points.push_back(pt);
  }
  return series;
}

DecaySeries single_decay(const OstrowskiSystem& sys, double gamma, double theta, std::size_t kmax,
                         std::size_t kmin, const Budget& budget) {
  if (kmin < 2 || kmax < kmin) throw std::invalid_argument("single_decay: need 2 <= kmin <= kmax");
  const std::uint64_t q_max = require_u64(sys.q(kmax), "q_kmax");
  check_cap("max_decay_q", "q_kmax", q_max, budget.max_decay_q);

  DecaySeries out;
  out.m = sys.m();
  out.gamma = gamma;
  out.theta = theta;
  const double mg = static_cast<double>(sys.m()) * gamma;
  out.hypothesis_holds = std::abs(mg - std::round(mg)) > 1e-12;

  const Turns step = double_to_turns(theta);
  Turns acc = 0;
  ComplexSum sum;
  Odometer odo(sys);
  std::size_t k = kmin;
  std::uint64_t next_q = *sys.q_u64(k);
  for (std::uint64_t u = 0; u < q_max; ++u) {
    const Turns phase = double_to_turns(gamma * static_cast<double>(odo.digit_sum())) + acc;
    sum.add(unit(phase));
    acc += step;
    odo.next();
    while (u + 1 == next_q && k <= kmax) {
      out.points.push_back({k, next_q, std::abs(sum.value()) / static_cast<double>(next_q)});
      ++k;
      if (k <= kmax) next_q = *sys.q_u64(k);
    }
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
  for (const DecayPoint& p : out.points) {
    if (!(p.D > 0)) continue;
    const double x = static_cast<double>(p.k), y = std::log(p.D);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1;
  }
  out.slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  return out;
}

std::pair<std::complex<double>, std::complex<double>> m_sums(const OstrowskiSystem& sys, std::size_t k,
                                                             const BigInt& h, double theta, PhaseBase base,
                                                             const Budget& budget) {
  if (k < 2) throw std::invalid_argument("m_sums: k must be >= 2");
  const std::uint64_t qk = require_u64(sys.q(k), "q_k");
  const std::uint64_t qkm1 = *sys.q_u64(k - 1);
  check_cap("max_msum_work", "q_k", qk, budget.max_msum_work);

  const Surd& s = base == PhaseBase::phi ? sys.params().phi : sys.params().alpha;
  // phase of term u is -(-1)^k h u s
  const Turns step = frac_mul_turns(k % 2 == 0 ? BigInt(-h) : h, s);
  Turns acc = 0;
  ComplexSum m1, m2;
  Odometer odo(sys);
  for (std::uint64_t u = 0; u < qk; ++u) {
    const std::complex<double> term = unit(double_to_turns(theta * static_cast<double>(odo.digit_sum())) + acc);
    (u < qkm1 ? m1 : m2).add(term);
    acc += step;
    odo.next();
  }
  return {m1.value(), m2.value()};
}

BZero b_zero(const AlphaParams& params, std::size_t k) {
  if (k < 2) throw std::invalid_argument("b_zero: k must be >= 2");
  const unsigned k0 = static_cast<unsigned>(k / 2);
  const Surd phik = phi_power(params, k0);
  const Surd one = Surd::integer(1, params.d);
  BZero b{one, one};
  if (k % 2 == 0) {
    b.b1 = (params.alpha + BigInt(1)) / phik;  // (2 - m + sqrt d) / (2 phi^k0)
    b.b2 = one / phik;
  } else {
    b.b1 = one / phik;
    b.b2 = params.alpha / phik;  // (-m + sqrt d) / (2 phi^k0)
  }
  b.b1_value = b.b1.to_double();
  b.b2_value = b.b2.to_double();
  return b;
}

SpectrumL dft_window(const OstrowskiSystem& sys, std::size_t k, std::size_t v, double theta,
                     const Budget& budget) {
  if (v < 1) throw std::invalid_argument("dft_window: v must be >= 1");
  const VSequence seq = v_sequence(sys, k, v + 1);
  SpectrumL out;
  out.k = k;
  out.v = v;
  out.theta = theta;
  out.start = require_u64(seq.n[v - 1], "n_{v-1}");
  out.Q = require_u64(seq.gap[v - 1], "Q(v)");
  check_cap("max_dft_q", "Q(v)", out.Q, budget.max_dft_q);

  const std::uint64_t Q = out.Q;
  std::vector<std::complex<double>> samples(Q), twiddle(Q);
  Odometer odo(sys, out.start);
  for (std::uint64_t u = 0; u < Q; ++u, odo.next()) {
    samples[u] = unit(theta * static_cast<double>(odo.digit_sum_below(k)));
  }
  for (std::uint64_t j = 0; j < Q; ++j) {
    twiddle[j] = unit(-static_cast<double>(j) / static_cast<double>(Q));
  }
  out.L.resize(Q);
  for (std::uint64_t l = 0; l < Q; ++l) {
    ComplexSum acc;
    for (std::uint64_t u = 0; u < Q; ++u) acc.add(samples[u] * twiddle[(l * u) % Q]);
    out.L[l] = acc.value() / static_cast<double>(Q);
  }
  return out;
}

std::complex<double> reconstruct(const SpectrumL& spectrum, std::uint64_t n) {
  const std::uint64_t Q = spectrum.Q;
  ComplexSum acc;
  for (std::uint64_t l = 0; l < Q; ++l) {
    acc.add(spectrum.L[l] * unit(static_cast<double>((l * (n % Q)) % Q) / static_cast<double>(Q)));
  }
  return acc.value();
}

}  // namespace ostrowski
