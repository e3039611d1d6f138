#include "ostrowski/equidist.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ostrowski/odometer.hpp"
#include "ostrowski/parallel.hpp"

namespace ostrowski {
namespace {

using Matrix = std::vector<std::vector<std::uint64_t>>;

void require_moduli(std::uint64_t b1, std::uint64_t b2) {
  if (b1 < 1 || b2 < 1) throw std::invalid_argument("moduli b1, b2 must be >= 1");
}

void check_n(std::uint64_t N, const Budget& budget) {
  if (N > budget.max_n) throw BudgetExceeded("max_n", "N = " + std::to_string(N), budget.max_n);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&text](const std::string& part) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a rational p/q: '" + text + "'");
    }
    if (used != part.size()) throw std::invalid_argument("not a rational p/q: '" + text + "'");
    return static_cast<std::int64_t>(v);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

JointCountReport joint_counts(std::uint64_t N, const OstrowskiSystem& s1, std::uint64_t b1,
                              const OstrowskiSystem& s2, std::uint64_t b2, unsigned threads,
                              const Budget& budget) {
  require_moduli(b1, b2);
  check_n(N, budget);
  const auto blocks = run_blocks<Matrix>(N, threads, [&](std::uint64_t begin, std::uint64_t end) {
    Matrix c(b1, std::vector<std::uint64_t>(b2, 0));
    Odometer o1(s1, begin), o2(s2, begin);
    for (std::uint64_t n = begin; n < end; ++n) {
      ++c[o1.digit_sum() % b1][o2.digit_sum() % b2];
      o1.next();
      o2.next();
    }
    return c;
  });

  JointCountReport rep;
  rep.N = N;
  rep.m1 = s1.m();
  rep.m2 = s2.m();
  rep.b1 = b1;
  rep.b2 = b2;
  rep.counts.assign(b1, std::vector<std::uint64_t>(b2, 0));
  for (const Matrix& c : blocks) {
    for (std::uint64_t i = 0; i < b1; ++i)
      for (std::uint64_t j = 0; j < b2; ++j) rep.counts[i][j] += c[i][j];
  }
  rep.expected = static_cast<double>(N) / static_cast<double>(b1 * b2);
  if (N > 0) {
    double sum = 0;
    for (const auto& row : rep.counts) {
      for (std::uint64_t c : row) {
        const double dev = std::abs(static_cast<double>(c) * static_cast<double>(b1 * b2) / static_cast<double>(N) - 1.0);
        rep.max_rel_dev = std::max(rep.max_rel_dev, dev);
        sum += dev;
      }
    }
    rep.mean_rel_dev = sum / static_cast<double>(b1 * b2);
  }
  rep.gcd1 = std::gcd(b1, static_cast<std::uint64_t>(s1.m())) == 1;
  rep.gcd2 = std::gcd(b2, static_cast<std::uint64_t>(s2.m())) == 1;
  return rep;
}

std::vector<std::uint64_t> residue_counts(std::uint64_t N, const OstrowskiSystem& sys, std::uint64_t b,
                                          unsigned threads, const Budget& budget) {
  require_moduli(b, 1);
  check_n(N, budget);
  const auto blocks = run_blocks<std::vector<std::uint64_t>>(N, threads, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> c(b, 0);
    Odometer odo(sys, begin);
    for (std::uint64_t n = begin; n < end; ++n, odo.next()) ++c[odo.digit_sum() % b];
    return c;
  });
  std::vector<std::uint64_t> out(b, 0);
  for (const auto& c : blocks)
    for (std::uint64_t i = 0; i < b; ++i) out[i] += c[i];
  return out;
}

std::vector<std::vector<double>> counts_via_orthogonality(std::uint64_t N, const OstrowskiSystem& s1,
                                                          std::uint64_t b1, const OstrowskiSystem& s2,
                                                          std::uint64_t b2, unsigned threads,
                                                          const Budget& budget) {
  require_moduli(b1, b2);
  // T[j1][j2] = sum_{n<N} e(j1 S1(n) / b1 + j2 S2(n) / b2)
  std::vector<std::vector<std::complex<double>>> T(b1, std::vector<std::complex<double>>(b2));
  for (std::uint64_t j1 = 0; j1 < b1; ++j1) {
    for (std::uint64_t j2 = 0; j2 < b2; ++j2) {
      T[j1][j2] = joint_exp_sum(N, static_cast<double>(j1) / static_cast<double>(b1),
                                static_cast<double>(j2) / static_cast<double>(b2), s1, s2, threads, budget);
    }
  }
  std::vector<std::vector<double>> out(b1, std::vector<double>(b2, 0.0));
  for (std::uint64_t a1 = 0; a1 < b1; ++a1) {
    for (std::uint64_t a2 = 0; a2 < b2; ++a2) {
      ComplexSum acc;
      for (std::uint64_t j1 = 0; j1 < b1; ++j1) {
        for (std::uint64_t j2 = 0; j2 < b2; ++j2) {
          const double phase = -static_cast<double>((j1 * a1) % b1) / static_cast<double>(b1) -
                               static_cast<double>((j2 * a2) % b2) / static_cast<double>(b2);
          acc.add(unit(phase) * T[j1][j2]);
        }
      }
      out[a1][a2] = acc.value().real() / static_cast<double>(b1 * b2);
    }
  }
  return out;
}

TruncatedSumTable::TruncatedSumTable(const OstrowskiSystem& sys, std::uint64_t limit, std::size_t kmax)
    : limit_(limit), kmax_(kmax), full_(limit), trunc_(limit * (kmax + 1)) {
  Odometer odo(sys);
  for (std::uint64_t n = 0; n < limit; ++n, odo.next()) {
    full_[n] = static_cast<std::uint32_t>(odo.digit_sum());
    const auto eps = odo.digits();
    std::uint32_t s = 0;
    for (std::size_t k = 0; k <= kmax; ++k) {
      trunc_[n * (kmax + 1) + k] = s;
      if (k < eps.size()) s += eps[k];
    }
  }
}

double MismatchResult::bound() const {
  return static_cast<double>(bound_num) / static_cast<double>(bound_den);
}

MismatchResult mismatch_count(const TruncatedSumTable& table, const OstrowskiSystem& sys, std::uint64_t N,
                              std::size_t k, std::uint64_t r) {
  if (k < 2) throw std::invalid_argument("mismatch_count: k must be >= 2");
  if (N + r > table.limit() || k > table.kmax()) throw std::invalid_argument("mismatch_count: table too small");
  MismatchResult out;
  out.N = N;
  out.r = r;
  out.k = k;
  for (std::uint64_t n = 0; n < N; ++n) {
    const auto full = static_cast<std::int64_t>(table.full(n + r)) - table.full(n);
    const auto trunc = static_cast<std::int64_t>(table.trunc(n + r, k)) - table.trunc(n, k);
    if (full != trunc) ++out.count;
  }
  out.bound_num = BigInt(N) * r;
  out.bound_den = sys.q(k - 1);
  out.holds = BigInt(out.count) * out.bound_den <= out.bound_num;
  return out;
}

MismatchResult mismatch_count(const OstrowskiSystem& sys, std::uint64_t N, std::size_t k, std::uint64_t r) {
  if (k < 2) throw std::invalid_argument("mismatch_count: k must be >= 2");
  return mismatch_count(TruncatedSumTable(sys, N + r, k), sys, N, k, r);
}

std::string to_string(ScanMode mode) { return mode == ScanMode::theorem ? "theorem" : "corollary"; }

ScanMode parse_scan_mode(const std::string& text) {
  if (text == "theorem") return ScanMode::theorem;
  if (text == "corollary") return ScanMode::corollary;
  throw std::invalid_argument("scan mode must be 'theorem' or 'corollary', got '" + text + "'");
}

std::optional<std::pair<double, double>> fit_error_exponent(const std::vector<std::uint64_t>& grid,
                                                            const std::vector<double>& err) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < grid.size() && i < err.size(); ++i) {
    if (err[i] > 0) {
      xs.push_back(std::log(static_cast<double>(grid[i])));
      ys.push_back(std::log(err[i]));
    }
  }
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (my + slope * (xs[i] - mx));
    ss += r * r;
  }
  const double delta = slope == 0.0 ? 0.0 : -slope;  // no negative zero
  return std::make_pair(delta, std::sqrt(ss / n));
}

DeltaFit delta_scan(const ScanConfig& config, const Budget& budget) {
  const auto& grid = config.grid;
  if (grid.size() < 4) throw std::invalid_argument("delta_scan: the N grid needs at least four points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == 0) throw std::invalid_argument("delta_scan: grid values must be positive");
    if (i > 0 && grid[i] <= grid[i - 1]) throw std::invalid_argument("delta_scan: grid must be strictly increasing");
  }
  const OstrowskiSystem s1(config.m1), s2(config.m2);

  DeltaFit fit;
  fit.mode = config.mode;
  fit.grid = grid;
  if (config.mode == ScanMode::theorem) {
    if (config.beta_exact) fit.hypothesis_holds = !is_integer(*config.beta_exact * Rational(config.m2));
    if (config.theta_exact) fit.theta_nonintegral = !is_integer(*config.theta_exact * Rational(config.m1));
    const ExpSumSeries series = joint_exp_series(grid, config.theta, config.beta, s1, s2, config.threads, budget);
    for (const ExpSumPoint& p : series.points) {
      fit.sums.push_back(p.value);
      fit.err.push_back(p.normalized);
    }
  } else {
    for (std::uint64_t N : grid) {
      fit.reports.push_back(joint_counts(N, s1, config.b1, s2, config.b2, config.threads, budget));
      fit.err.push_back(fit.reports.back().max_rel_dev);
    }
    fit.hypothesis_holds = fit.reports.front().gcd1 && fit.reports.front().gcd2;
  }
  if (const auto f = fit_error_exponent(grid, fit.err)) {
    fit.delta_hat = f->first;
    fit.residual = f->second;
  }
  return fit;
}

}  // namespace ostrowski
