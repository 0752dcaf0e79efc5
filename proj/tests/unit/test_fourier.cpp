#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sqdiff/arcs.hpp"
#include "sqdiff/error.hpp"
#include "sqdiff/fourier.hpp"
#include "test_support.hpp"

namespace sqdiff {
namespace {

Complex slow_exp_sum(const IntegerSet& A, double gamma) {
  long double re = 0;
  long double im = 0;
  for (const auto a : A) {
    const long double phase = 2 * std::numbers::pi_v<long double> * static_cast<long double>(a) * gamma;
    re += std::cos(phase);
    im += std::sin(phase);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

TEST(ExpSum, Trivial) {
  const auto A = random_subset(500, 0.3, 2);
  EXPECT_EQ(exp_sum(A, 0.0), Complex(static_cast<double>(A.size()), 0.0));
  EXPECT_EQ(exp_sum(A, 3.0).real(), static_cast<double>(A.size()));
  std::vector<std::int64_t> all(100);
  for (int i = 0; i < 100; ++i) all[i] = i + 1;
  const auto full = IntegerSet::from_elements(100, all);
  EXPECT_LT(std::abs(exp_sum(full, 0.5)), 1e-10);
}

TEST(ExpSum, MatchesOracle) {
  const auto& o = testing::oracle()["exp_sum"];
  const auto A = IntegerSet::from_elements(o["N"], o["A"].get<std::vector<std::int64_t>>());
  for (const auto& s : o["samples"]) {
    const auto v = exp_sum(A, s["gamma"].get<double>());
    EXPECT_NEAR(v.real(), s["re"].get<double>(), 1e-10 * 50);
    EXPECT_NEAR(v.imag(), s["im"].get<double>(), 1e-10 * 50);
  }
}

TEST(ExpSum, GridMatchesPointwise) {
  const auto A = random_subset(2000, 0.1, 4);
  const auto poly = TrigPoly::indicator(A);
  const auto grid = poly.grid(0.1234, 1e-3, 700);
  for (std::size_t i = 0; i < grid.size(); i += 13) {
    const double g = 0.1234 + 1e-3 * static_cast<double>(i);
    EXPECT_LT(std::abs(grid[i] - slow_exp_sum(A, g)), 1e-9 * static_cast<double>(A.size()));
  }
}

TEST(BalancedExpSum, Properties) {
  const auto A = random_subset(777, 0.4, 5);
  EXPECT_EQ(balanced_exp_sum(A, 0.0), Complex(0.0, 0.0));
  std::vector<std::int64_t> all(64);
  for (int i = 0; i < 64; ++i) all[i] = i + 1;
  const auto full = IntegerSet::from_elements(64, all);
  for (double g : {0.1, 0.37, 0.5}) EXPECT_LT(std::abs(balanced_exp_sum(full, g)), 1e-10);
  const BalancedTransform T(A);
  for (double g : {0.01, 0.2, 0.77}) EXPECT_LT(std::abs(T(g) - balanced_exp_sum(A, g)), 1e-9);
  EXPECT_EQ(interval_sum(10, 2.0), Complex(10.0, 0.0));
}

TEST(WHat, Examples) {
  EXPECT_NEAR(W_hat(0.0, 100).real(), 11.0, 1e-12);
  const Complex e = W_hat(0.3, 1);
  EXPECT_NEAR(e.real(), 2 * std::cos(2 * std::numbers::pi * 0.3), 1e-12);
  EXPECT_NEAR(e.imag(), 2 * std::sin(2 * std::numbers::pi * 0.3), 1e-12);
  for (const auto& c : testing::oracle()["w_hat"]) {
    const auto v = W_hat(c["gamma"].get<double>(), c["N"].get<std::int64_t>());
    EXPECT_NEAR(v.real(), c["re"].get<double>(), 1e-9);
    EXPECT_NEAR(v.imag(), c["im"].get<double>(), 1e-9);
  }
  const double top = std::abs(W_hat(0.0, 5000));
  for (int i = 1; i < 200; ++i) EXPECT_LE(std::abs(W_hat(i / 199.0, 5000)), top * (1 + 1e-12));
}

TEST(GaussSum, ExamplesAndOracle) {
  EXPECT_NEAR(std::abs(gauss_sum(1, 1) - Complex(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(gauss_sum(1, 3) - Complex(0, std::sqrt(3.0))), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(gauss_sum(1, 4) - Complex(2, 2)), 0.0, 1e-12);
  EXPECT_THROW(gauss_sum(2, 4), PreconditionError);
  EXPECT_THROW(gauss_sum(1, 0), InvalidArgument);
  for (const auto& c : testing::oracle()["gauss"]) {
    const auto v = gauss_sum(c["a"].get<std::int64_t>(), c["q"].get<std::int64_t>());
    EXPECT_NEAR(v.real(), c["re"].get<double>(), 1e-9);
    EXPECT_NEAR(v.imag(), c["im"].get<double>(), 1e-9);
  }
}

TEST(GaussSum, Magnitudes) {
  for (std::int64_t q = 1; q <= 200; ++q) {
    for (std::int64_t a = 1; a <= q; a += 7) {
      if (std::gcd(a, q) != 1) continue;
      const double mag = std::abs(gauss_sum(a, q));
      if (q % 2 == 1) {
        EXPECT_NEAR(mag, std::sqrt(static_cast<double>(q)), 1e-9);
      }
      EXPECT_LE(mag, std::sqrt(2.0 * static_cast<double>(q)) + 1e-9);
    }
  }
}

TEST(Correlation, ExamplesAndOracle) {
  const auto pair = correlation_count(IntegerSet::from_elements(2, {1, 2}));
  EXPECT_NEAR(pair.value, std::sqrt(2.0), 1e-15);
  EXPECT_EQ(pair.pairs, 1u);
  ASSERT_TRUE(pair.witness);
  EXPECT_EQ(pair.witness->n, 1);
  for (const auto& c : testing::oracle()["correlation"]) {
    const auto A = IntegerSet::from_elements(c["N"], c["A"].get<std::vector<std::int64_t>>());
    const auto r = correlation_count(A);
    EXPECT_NEAR(r.value, c["value"].get<double>(), 1e-9);
    EXPECT_EQ(r.pairs, c["pairs"].get<std::uint64_t>());
  }
}

TEST(Correlation, ZeroIffSdf) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto A = random_subset(300, 0.01 + 0.002 * static_cast<double>(seed), seed);
    const auto r = correlation_count(A);
    EXPECT_EQ(r.value == 0.0, is_sdf(A)) << seed;
    EXPECT_EQ(r.witness.has_value(), !is_sdf(A));
  }
  EXPECT_EQ(correlation_count(greedy_sdf(5000)).value, 0.0);
}

TEST(Correlation, EqualsOrthogonalityIntegral) {
  // The integrand has frequencies in (-2N - 2, 2N + 2), so an equispaced
  // sum with 2N + 2 points is the exact integral.
  const auto A = random_subset(120, 0.2, 7);
  const std::int64_t M = 2 * A.N() + 2;
  Complex total;
  for (std::int64_t i = 0; i < M; ++i) {
    const double g = static_cast<double>(i) / static_cast<double>(M);
    total += std::conj(exp_sum(A, g)) * exp_sum(A, g) * std::conj(W_hat(g, A.N()));
  }
  total /= static_cast<double>(M);
  EXPECT_NEAR(total.real(), correlation_count(A).value, 1e-8);
}

TEST(WeightRatios, Bounded) {
  EXPECT_NEAR(weight_arc_ratio(0, 1, 0.0, 10000), std::abs(W_hat(0.0, 10000)) / 100.0, 1e-12);
  EXPECT_NEAR(weight_arc_ratio(0, 1, 0.0, 10000), 1.0, 0.02);
  double worst = 0;
  for (std::int64_t q = 2; q <= 30; ++q) {
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (double b : {0.0, 1e-4, -3e-3}) {
        worst = std::max(worst, weight_gauss_ratio(a, q, b, 10000));
        EXPECT_TRUE(std::isfinite(weight_arc_ratio(a, q, b, 10000)));
      }
    }
  }
  EXPECT_LT(worst, 10.0);
  EXPECT_THROW(weight_arc_ratio(2, 4, 0.0, 100), PreconditionError);
}

}  // namespace
}  // namespace sqdiff
