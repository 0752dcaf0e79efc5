#include <gtest/gtest.h>

#include <cmath>

#include "sqdiff/chang.hpp"
#include "sqdiff/error.hpp"
#include "sqdiff/fourier.hpp"
#include "sqdiff/random.hpp"

namespace sqdiff {
namespace {

TEST(Fejer, Normalization) {
  EXPECT_EQ(fejer_kernel(0.0), 1.0);
  EXPECT_EQ(fejer_hat(0.0), 1.0);
  EXPECT_EQ(fejer_hat(1.5), 0.0);
  EXPECT_NEAR(fejer_kernel(0.5), 4.0 / (M_PI * M_PI), 1e-15);
  for (double t = 0; t <= 0.5; t += 0.01) EXPECT_GE(fejer_kernel(t), 1.0 / 3.0);
}

TEST(Fejer, PoissonIdentity) {
  for (std::int64_t N : {1, 7, 256, 1024}) {
    double worst = 0;
    for (int i = 0; i <= 1000; ++i) {
      const double beta = -1.0 + 2.0 * i / 1000.0;
      worst = std::max(worst, std::abs(fejer_series_sum(beta, N) - fejer_poisson_closed_form(beta, N)));
    }
    EXPECT_LT(worst, 1e-9) << N;
  }
  EXPECT_NEAR(fejer_series_sum(0.0, 256), 512.0, 1e-9);
  // The truncated sum approaches the closed form from below at beta = 0.
  const double t = fejer_truncated_sum(0.0, 256, 64 * 256);
  EXPECT_LT(t, 512.0);
  EXPECT_GT(t, 510.0);
  EXPECT_NEAR(fejer_truncated_sum(0.3, 8, 200000), fejer_poisson_closed_form(0.3, 8), 1e-4);
  EXPECT_THROW(fejer_poisson_closed_form(0.1, 0), InvalidArgument);
}

TEST(Chang, SingleRational) {
  const auto A = random_subset(200, 0.3, 11);
  const std::vector<double> g = {1.0 / 3.0};
  const auto r = chang_check(A, g, 1);
  EXPECT_NEAR(r.lhs, std::abs(exp_sum(A, 1.0 / 3.0)), 1e-9);
  EXPECT_TRUE(r.holder_ok);
  EXPECT_TRUE(r.fejer_ok);
  EXPECT_TRUE(r.poisson_ok);
  EXPECT_TRUE(r.chain_ok);
  EXPECT_EQ(r.energy_wrap_half, 1u);
}

TEST(Chang, ChainHoldsOnRandomInstances) {
  Rng rng(5);
  for (int i = 0; i < 12; ++i) {
    const std::int64_t N = 64 << (i % 3);
    const auto A = random_subset(N, 0.1 + 0.05 * (i % 5), 100 + i);
    if (A.empty()) continue;
    std::vector<double> g;
    const int count = 1 + static_cast<int>(rng.uniform(0, 5));
    for (int j = 0; j < count; ++j) g.push_back(rng.uniform01());
    for (int m = 1; m <= 2; ++m) {
      const auto r = chang_check(A, g, m);
      EXPECT_TRUE(r.holder_ok) << i << " m=" << m;
      EXPECT_TRUE(r.fejer_ok) << i << " m=" << m;
      EXPECT_TRUE(r.poisson_ok) << i << " m=" << m;
      EXPECT_TRUE(r.chain_ok) << i << " m=" << m;
      EXPECT_GT(r.final_ratio, 0.0);
    }
  }
}

TEST(Chang, Preconditions) {
  const auto A = random_subset(50, 0.5, 1);
  const std::vector<double> none;
  const std::vector<double> one = {0.25};
  EXPECT_THROW(chang_check(A, none, 1), InvalidArgument);
  EXPECT_THROW(chang_check(A, one, 0), InvalidArgument);
}

}  // namespace
}  // namespace sqdiff
