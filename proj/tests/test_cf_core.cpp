#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ostrowski/cf_core.hpp"

using namespace ostrowski;

TEST_CASE("make_alpha builds exact constants") {
  const AlphaParams p2 = make_alpha(2);
  CHECK(p2.d == 12);
  CHECK(p2.alpha.to_double() == doctest::Approx(0.7320508).epsilon(1e-7));
  CHECK(p2.phi.to_double() == doctest::Approx(3.7320508).epsilon(1e-7));

  const AlphaParams p1 = make_alpha(1);
  CHECK(p1.phi.to_double() == doctest::Approx(2.6180339).epsilon(1e-7));
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(p1.phi.to_double() == doctest::Approx(golden * golden).epsilon(1e-14));

  CHECK_THROWS_AS(make_alpha(0), std::invalid_argument);
  CHECK_THROWS_AS(make_alpha(-3), std::invalid_argument);
}

TEST_CASE("alpha and phi satisfy their minimal polynomials exactly") {
  for (std::int64_t m = 1; m <= 50; ++m) {
    const AlphaParams p = make_alpha(m);
    const Surd& a = p.alpha;
    CHECK((a * a + a * BigInt(m) - BigInt(m)).is_zero());
    CHECK(p.phi == a + BigInt(m + 1));
    CHECK(a.sign() > 0);
    CHECK((a - BigInt(1)).sign() < 0);
    CHECK((p.phi - BigInt(1)).sign() > 0);
    const BigInt r = isqrt(p.d);
    CHECK(r * r != p.d);
  }
}

TEST_CASE("convergent denominators match hand-computed tables") {
  auto as_u64 = [](const ConvergentTable& t) {
    std::vector<std::uint64_t> out;
    for (const auto& q : t.q) out.push_back(static_cast<std::uint64_t>(q));
    return out;
  };
  CHECK(as_u64(convergents(make_alpha(2), 9)) == std::vector<std::uint64_t>{1, 1, 3, 4, 11, 15, 41, 56, 153, 209});
  CHECK(as_u64(convergents(make_alpha(1), 7)) == std::vector<std::uint64_t>{1, 1, 2, 3, 5, 8, 13, 21});
  CHECK(as_u64(convergents(make_alpha(3), 4)) == std::vector<std::uint64_t>{1, 1, 4, 5, 19});
  CHECK_THROWS_AS(convergents(make_alpha(2), 0), std::invalid_argument);
}

TEST_CASE("recurrence and determinant identities hold up to K = 200") {
  for (std::int64_t m = 1; m <= 10; ++m) {
    const ConvergentTable t = convergents(make_alpha(m), 200);
    REQUIRE(t.q.size() == 201);
    CHECK(t.q[0] == 1);
    CHECK(t.q[1] == 1);
    for (std::size_t i = 2; i <= 200; ++i) {
      const BigInt expected = (i % 2 == 0 ? BigInt(m) : BigInt(1)) * t.q[i - 1] + t.q[i - 2];
      CHECK(t.q[i] == expected);
      CHECK(t.q[i] > t.q[i - 1]);
    }
    for (std::size_t i = 0; i < 200; ++i) {
      CHECK(t.p[i + 1] * t.q[i] - t.p[i] * t.q[i + 1] == (i % 2 == 0 ? 1 : -1));
    }
  }
}

TEST_CASE("q_k grows like phi^(k/2)") {
  for (std::int64_t m : {1, 2, 3, 7}) {
    const AlphaParams p = make_alpha(m);
    const double rate = fitted_growth_rate(convergents(p, 200));
    CHECK(rate == doctest::Approx(std::log(p.phi.to_double()) / 2.0).epsilon(1e-2));
  }
}

TEST_CASE("half-index surd identities behind the b(0) normalization") {
  for (std::int64_t m = 1; m <= 5; ++m) {
    const AlphaParams p = make_alpha(m);
    const ConvergentTable t = convergents(p, 42);
    for (unsigned k0 = 1; k0 <= 20; ++k0) {
      const Surd phik = phi_power(p, k0);
      CHECK(p.alpha * t.q[2 * k0 - 1] + t.q[2 * k0] == phik);
      CHECK(p.alpha * BigInt(t.q[2 * k0 + 1] - t.q[2 * k0]) + t.q[2 * k0] == phik);
    }
  }
}

TEST_CASE("surd field arithmetic") {
  const BigInt d = 12;
  const Surd x(3, -2, 5, d);  // (3 - 2 sqrt 12) / 5 < 0
  CHECK(x.sign() < 0);
  CHECK(x.floor() == -1);
  CHECK((x / x) == Surd::integer(1, d));
  CHECK(((x * x) / x) == x);
  CHECK_THROWS_AS(x / Surd::integer(0, d), std::domain_error);
  CHECK_THROWS_AS(x + Surd(1, 1, 1, 5), std::invalid_argument);
  CHECK(Surd(4, 2, 6, d) == Surd(2, 1, 3, d));
  CHECK(Surd(1, 1, -1, d) == Surd(-1, -1, 1, d));
  CHECK(x.to_double() == doctest::Approx((3 - 2 * std::sqrt(12.0)) / 5));
}

TEST_CASE("frac_mul is exact and sign-correct") {
  const AlphaParams p = make_alpha(2);
  CHECK(frac_mul(0, p.phi) == 0.0);
  CHECK(frac_mul(1, p.phi) == doctest::Approx(0.7320508).epsilon(1e-7));
  CHECK(frac_mul(-1, p.phi) == doctest::Approx(1.0 - 0.7320508075688772).epsilon(1e-15));

  const double big = frac_mul(1000000, p.phi);
  const double ref = static_cast<double>(oracle::frac_256(1000000, p.phi));
  CHECK(std::abs(big - ref) <= 1e-12 * std::abs(ref));
}

TEST_CASE("frac_mul agrees with a 256-bit oracle for |h| <= 1e9") {
  std::mt19937_64 rng(20261018);
  std::uniform_int_distribution<long long> dist(-1000000000LL, 1000000000LL);
  for (std::int64_t m = 1; m <= 5; ++m) {
    const AlphaParams p = make_alpha(m);
    for (int trial = 0; trial < 300; ++trial) {
      const long long h = dist(rng);
      for (const Surd* s : {&p.alpha, &p.phi}) {
        const double got = frac_mul(h, *s);
        const double ref = static_cast<double>(oracle::frac_256(h, *s));
        CHECK(got >= 0.0);
        CHECK(got < 1.0);
        CHECK(std::abs(got - ref) <= 1e-12 * std::max(std::abs(ref), 1e-300));
      }
    }
  }
}

TEST_CASE("dist_nearest") {
  const AlphaParams p = make_alpha(2);
  CHECK(dist_nearest(0, p.alpha) == 0.0);
  CHECK(dist_nearest(1, p.alpha) == doctest::Approx(0.2679491).epsilon(1e-7));

  // q_8 = 153 is a best approximation denominator: brute force over smaller h.
  const double at_q8 = dist_nearest(153, p.alpha);
  for (long long h = 1; h < 153; ++h) {
    const auto f = oracle::frac_256(h, p.alpha);
    const double ref = static_cast<double>(f < 0.5 ? f : 1 - f);
    CHECK(at_q8 < ref);
  }
}

TEST_CASE("||h phi|| equals ||h alpha|| since phi - alpha is an integer") {
  for (std::int64_t m : {1, 2, 3, 4, 5}) {
    const AlphaParams p = make_alpha(m);
    for (long long h = -10000; h <= 10000; h += 7) {
      CHECK(frac_mul_turns(h, p.phi) == frac_mul_turns(h, p.alpha));
    }
  }
}
