#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ostrowski/expsum.hpp"

using namespace ostrowski;

TEST_CASE("joint_exp_sum trivial cases") {
  const OstrowskiSystem s2(2), s3(3);
  CHECK(joint_exp_sum(12345, 0.0, 0.0, s2, s3) == std::complex<double>(12345.0, 0.0));
  CHECK(joint_exp_sum(1, 0.37, 0.81, s2, s3) == std::complex<double>(1.0, 0.0));
  CHECK(joint_exp_sum(0, 0.37, 0.81, s2, s3) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("joint_exp_sum matches the per-n oracle") {
  const OstrowskiSystem s2(2), s3(3);
  // Frozen from oracle::naive_joint_sum(1000, 1/3, 1/2, m1 = 2, m2 = 3).
  const std::complex<double> pinned(-22.499999999999886, 32.042939940024233);
  const auto got = joint_exp_sum(1000, 1.0 / 3, 0.5, s2, s3);
  CHECK(std::abs(got - pinned) < 1e-9);
  CHECK(std::abs(got - oracle::naive_joint_sum(1000, 1.0 / 3, 0.5, s2, s3)) < 1e-9);

  const OstrowskiSystem s1(1), s5(5);
  CHECK(std::abs(joint_exp_sum(5000, 0.2, 0.7, s1, s5) - oracle::naive_joint_sum(5000, 0.2, 0.7, s1, s5)) < 1e-9);
}

TEST_CASE("joint_exp_sum is independent of the thread count") {
  const OstrowskiSystem s2(2), s3(3);
  const auto one = joint_exp_sum(300000, 0.37, 0.5, s2, s3, 1);
  const auto four = joint_exp_sum(300000, 0.37, 0.5, s2, s3, 4);
  CHECK(one == four);
  CHECK(std::abs(one) <= 300000.0);
}

TEST_CASE("joint_exp_sum honours the budget") {
  const OstrowskiSystem s2(2), s3(3);
  Budget b;
  b.max_n = 100;
  CHECK_THROWS_AS(joint_exp_sum(101, 0.1, 0.1, s2, s3, 1, b), BudgetExceeded);
  try {
    joint_exp_sum(101, 0.1, 0.1, s2, s3, 1, b);
  } catch (const BudgetExceeded& e) {
    CHECK(std::string(e.what()).find("max_n") != std::string::npos);
  }
}

TEST_CASE("single_decay") {
  const OstrowskiSystem s2(2);
  const DecaySeries flat = single_decay(s2, 0.0, 0.0, 12);
  CHECK_FALSE(flat.hypothesis_holds);
  for (const DecayPoint& p : flat.points) CHECK(p.D == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_FALSE(single_decay(s2, 0.5, 0.1, 8).hypothesis_holds);  // 2 * 1/2 is an integer

  const DecaySeries d = single_decay(s2, 1.0 / 3, 0.3, 20, 6);
  CHECK(d.hypothesis_holds);
  REQUIRE(d.points.size() == 15);
  CHECK(d.points.front().k == 6);
  CHECK(d.points.front().q_k == 41);
  // Frozen from a direct 41-term evaluation with digits_of.
  CHECK(d.points.front().D == doctest::Approx(0.0675577940693891).epsilon(1e-12));
  CHECK(d.slope < 0);

  Budget b;
  b.max_decay_q = 1000;
  CHECK_THROWS_AS(single_decay(s2, 1.0 / 3, 0.3, 12, 2, b), BudgetExceeded);
  CHECK_THROWS_AS(single_decay(s2, 1.0 / 3, 0.3, 5, 6), std::invalid_argument);
}

TEST_CASE("m_sums") {
  const OstrowskiSystem s2(2);
  for (std::size_t k = 2; k < 12; ++k) {
    const auto [m1, m2] = m_sums(s2, k, 0, 0.0);
    CHECK(m1.real() == doctest::Approx(static_cast<double>(s2.q(k - 1))));
    CHECK(m2.real() == doctest::Approx(static_cast<double>(s2.q(k) - s2.q(k - 1))));
  }

  // Frozen from a per-u evaluation with 256-bit phases.
  const auto [m1, m2] = m_sums(s2, 4, 1, 1.0 / 3);
  CHECK(std::abs(m1 - std::complex<double>(1.140366716132896, 1.120730042580536)) < 1e-12);
  CHECK(std::abs(m2 - std::complex<double>(-1.055967615512319, -0.608298392031278)) < 1e-12);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 2 + rng() % 12;
    const long long h = static_cast<long long>(rng() % 2001) - 1000;
    const double theta = static_cast<double>(rng() % 1000) / 1000.0;
    const auto [a, b] = m_sums(s2, k, h, theta);
    CHECK(std::abs(a) <= static_cast<double>(s2.q(k - 1)) + 1e-9);
    CHECK(std::abs(b) <= static_cast<double>(s2.q(k) - s2.q(k - 1)) + 1e-9);
    // phi and alpha give identical phases
    const auto [c, d] = m_sums(s2, k, h, theta, PhaseBase::alpha);
    CHECK(std::abs(a - c) < 1e-9);
    CHECK(std::abs(b - d) < 1e-9);
  }
  CHECK_THROWS_AS(m_sums(s2, 1, 1, 0.1), std::invalid_argument);
}

TEST_CASE("b_zero values and exact normalization") {
  const AlphaParams p2 = make_alpha(2);
  const BZero even = b_zero(p2, 4);
  CHECK(even.b1_value == doctest::Approx(0.124355).epsilon(1e-5));
  CHECK(even.b2_value == doctest::Approx(0.0717968).epsilon(1e-6));
  const BZero odd = b_zero(p2, 3);
  CHECK(odd.b1_value == doctest::Approx(0.2679492).epsilon(1e-6));
  CHECK(odd.b2_value == doctest::Approx(0.1961524).epsilon(1e-6));
  CHECK_THROWS_AS(b_zero(p2, 1), std::invalid_argument);

  for (std::int64_t m : {2, 3}) {
    const AlphaParams p = make_alpha(m);
    const ConvergentTable t = convergents(p, 24);
    for (std::size_t k = 2; k <= 20; ++k) {
      const BZero b = b_zero(p, k);
      CHECK(b.b1.sign() > 0);
      CHECK(b.b2.sign() > 0);
      const Surd total = b.b1 * t.q[k - 1] + b.b2 * BigInt(t.q[k] - t.q[k - 1]);
      CHECK(total == Surd::integer(1, p.d));
      // one more k0 divides both coefficients by phi
      const BZero next = b_zero(p, k + 2);
      CHECK(next.b1 * p.phi == b.b1);
      CHECK(next.b2 * p.phi == b.b2);
    }
  }
}

TEST_CASE("dft_window") {
  const OstrowskiSystem s2(2);
  const SpectrumL flat = dft_window(s2, 4, 2, 0.0);
  CHECK(std::abs(flat.L[0] - 1.0) < 1e-12);
  for (std::size_t l = 1; l < flat.L.size(); ++l) CHECK(std::abs(flat.L[l]) < 1e-12);

  const SpectrumL s = dft_window(s2, 4, 1, 1.0 / 3);
  CHECK(s.start == 0);
  CHECK(s.Q == 11);
  double energy = 0;
  for (const auto& z : s.L) energy += std::norm(z);
  CHECK(energy == doctest::Approx(1.0).epsilon(1e-12));
  const std::uint64_t extended = s.Q + *s2.q_u64(3);
  for (std::uint64_t n = 0; n < extended; ++n) {
    const auto direct = oracle::unit(static_cast<double>(digit_sum_trunc(n + s.start, s2, 4)) / 3.0);
    CHECK(std::abs(reconstruct(s, n) - direct) < 1e-9);
  }

  Budget b;
  b.max_dft_q = 10;
  CHECK_THROWS_AS(dft_window(s2, 4, 1, 0.1, b), BudgetExceeded);
  CHECK_THROWS_AS(dft_window(s2, 4, 0, 0.1), std::invalid_argument);
}

TEST_CASE("unit and compensated sums") {
  CHECK(std::abs(unit(0.25) - std::complex<double>(0, 1)) < 1e-15);
  CHECK(std::abs(unit(-0.75) - std::complex<double>(0, 1)) < 1e-15);
  CHECK(std::abs(unit(Turns{1} << 126) - std::complex<double>(0, 1)) < 1e-15);
  ComplexSum s;
  s.add({1e16, 0});
  for (int i = 0; i < 1000; ++i) s.add({1.0, 0});
  s.add({-1e16, 0});
  CHECK(s.value().real() == 1000.0);
}
