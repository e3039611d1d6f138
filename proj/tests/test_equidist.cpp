#include <doctest.h>

#include "oracles.hpp"
#include "ostrowski/equidist.hpp"

using namespace ostrowski;

TEST_CASE("joint_counts trivial cases") {
  const OstrowskiSystem s2(2), s3(3);
  const JointCountReport one_class = joint_counts(777, s2, 1, s3, 1);
  CHECK(one_class.counts == std::vector<std::vector<std::uint64_t>>{{777}});
  CHECK(one_class.max_rel_dev == 0.0);

  const JointCountReport single = joint_counts(1, s2, 3, s3, 2);
  CHECK(single.counts == std::vector<std::vector<std::uint64_t>>{{1, 0}, {0, 0}, {0, 0}});
  CHECK_THROWS_AS(joint_counts(10, s2, 0, s3, 2), std::invalid_argument);
}

TEST_CASE("joint_counts matches the per-n oracle") {
  const OstrowskiSystem s2(2), s3(3);
  const JointCountReport r = joint_counts(1000, s2, 3, s3, 2);
  // Frozen from oracle::naive_counts(1000, m1 = 2, b1 = 3, m2 = 3, b2 = 2).
  const std::vector<std::vector<std::uint64_t>> pinned{{156, 171}, {182, 156}, {162, 173}};
  CHECK(r.counts == pinned);
  CHECK(r.counts == oracle::naive_counts(1000, s2, 3, s3, 2));
  CHECK(r.expected == doctest::Approx(1000.0 / 6));
  CHECK(r.max_rel_dev == doctest::Approx(182 * 6 / 1000.0 - 1));
  CHECK(r.gcd1);
  CHECK(r.gcd2);

  const JointCountReport flagged = joint_counts(100, s2, 4, s3, 3);
  CHECK_FALSE(flagged.gcd1);
  CHECK_FALSE(flagged.gcd2);
}

TEST_CASE("joint counts: marginals, threads and orthogonality") {
  const OstrowskiSystem s2(2), s5(5);
  const std::uint64_t N = 200003;
  const JointCountReport r = joint_counts(N, s2, 5, s5, 3, 1);
  std::uint64_t total = 0;
  for (const auto& row : r.counts)
    for (auto c : row) total += c;
  CHECK(total == N);

  const auto c1 = residue_counts(N, s2, 5);
  const auto c2 = residue_counts(N, s5, 3);
  for (std::uint64_t a1 = 0; a1 < 5; ++a1) {
    std::uint64_t row = 0;
    for (std::uint64_t a2 = 0; a2 < 3; ++a2) row += r.counts[a1][a2];
    CHECK(row == c1[a1]);
  }
  for (std::uint64_t a2 = 0; a2 < 3; ++a2) {
    std::uint64_t col = 0;
    for (std::uint64_t a1 = 0; a1 < 5; ++a1) col += r.counts[a1][a2];
    CHECK(col == c2[a2]);
  }

  CHECK(joint_counts(N, s2, 5, s5, 3, 7) == r);

  const auto via = counts_via_orthogonality(N, s2, 5, s5, 3);
  for (std::uint64_t a1 = 0; a1 < 5; ++a1)
    for (std::uint64_t a2 = 0; a2 < 3; ++a2)
      CHECK(via[a1][a2] == doctest::Approx(static_cast<double>(r.counts[a1][a2])).epsilon(1e-9));
}

TEST_CASE("mismatch_count") {
  const OstrowskiSystem s2(2);
  CHECK(mismatch_count(s2, 5000, 4, 0).count == 0);

  // q_{k-1} > N r forces a zero count
  const MismatchResult none = mismatch_count(s2, 100, 12, 3);
  CHECK(none.count == 0);
  CHECK(none.holds);

  // Frozen from a direct double evaluation with digits_of.
  const MismatchResult r = mismatch_count(s2, 10000, 6, 3);
  CHECK(r.count == 690);
  CHECK(r.bound() == doctest::Approx(2000.0));
  CHECK(r.holds);

  // independent check on a smaller range
  for (std::uint64_t shift : {1, 2, 7}) {
    std::uint64_t naive = 0;
    for (std::uint64_t n = 0; n < 3000; ++n) {
      const auto full = static_cast<std::int64_t>(digit_sum(n + shift, s2)) - static_cast<std::int64_t>(digit_sum(n, s2));
      const auto trunc = static_cast<std::int64_t>(digit_sum_trunc(n + shift, s2, 5)) -
                         static_cast<std::int64_t>(digit_sum_trunc(n, s2, 5));
      if (full != trunc) ++naive;
    }
    CHECK(mismatch_count(s2, 3000, 5, shift).count == naive);
  }
  CHECK_THROWS_AS(mismatch_count(s2, 10, 1, 1), std::invalid_argument);
}

TEST_CASE("mismatch bound across a sweep") {
  for (std::int64_t m : {2, 3}) {
    const OstrowskiSystem sys(m);
    const TruncatedSumTable table(sys, 10020, 10);
    for (std::size_t k = 3; k <= 10; ++k)
      for (std::uint64_t r = 1; r <= 20; ++r)
        for (std::uint64_t N : {1000, 10000}) CHECK(mismatch_count(table, sys, N, k, r).holds);
  }
}

TEST_CASE("delta_scan") {
  ScanConfig flat;
  flat.mode = ScanMode::theorem;
  flat.theta_exact = Rational(0);
  flat.beta_exact = Rational(0);
  flat.grid = {100, 1000, 10000, 100000};
  const DeltaFit f = delta_scan(flat);
  for (double e : f.err) CHECK(e == doctest::Approx(1.0));
  REQUIRE(f.delta_hat);
  CHECK(*f.delta_hat == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f.hypothesis_holds == false);

  ScanConfig trivial;
  trivial.mode = ScanMode::corollary;
  trivial.grid = {100, 1000, 10000, 100000};
  const DeltaFit t = delta_scan(trivial);
  for (double e : t.err) CHECK(e == 0.0);
  CHECK_FALSE(t.delta_hat.has_value());

  ScanConfig bad = trivial;
  bad.grid = {100, 1000, 10000};
  CHECK_THROWS_AS(delta_scan(bad), std::invalid_argument);
  bad.grid = {100, 1000, 1000, 10000};
  CHECK_THROWS_AS(delta_scan(bad), std::invalid_argument);
  bad.grid = {0, 10, 100, 1000};
  CHECK_THROWS_AS(delta_scan(bad), std::invalid_argument);

  ScanConfig cor;
  cor.mode = ScanMode::corollary;
  cor.b1 = 3;
  cor.b2 = 2;
  cor.grid = {1000, 3000, 10000, 30000, 100000};
  const DeltaFit c = delta_scan(cor);
  CHECK(c.hypothesis_holds == true);
  REQUIRE(c.delta_hat);
  CHECK(*c.delta_hat > 0);
  CHECK(c.err.back() < c.err.front());
}

TEST_CASE("fit_error_exponent recovers a power law") {
  const std::vector<std::uint64_t> grid{10, 100, 1000, 10000};
  std::vector<double> err;
  for (auto N : grid) err.push_back(3.0 * std::pow(static_cast<double>(N), -0.25));
  const auto fit = fit_error_exponent(grid, err);
  REQUIRE(fit);
  CHECK(fit->first == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fit->second < 1e-12);
  CHECK_FALSE(fit_error_exponent(grid, {0, 0, 0, 1}).has_value());
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("2/6") == Rational(1, 3));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(to_string(parse_rational("4/-8")) == "-1/2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("0.5"));
  CHECK_THROWS(parse_rational("x"));
}
