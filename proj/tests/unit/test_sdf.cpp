#include <gtest/gtest.h>

#include "sqdiff/error.hpp"
#include "sqdiff/sdf.hpp"
#include "test_support.hpp"

namespace sqdiff {
namespace {

IntegerSet iset(std::int64_t N, std::vector<std::int64_t> v) { return IntegerSet::from_elements(N, std::move(v)); }

bool pairwise_sdf(const IntegerSet& A) {
  const auto& e = A.elements();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (is_square(static_cast<std::uint64_t>(e[i] - e[j]))) return false;
    }
  }
  return true;
}

TEST(IntegerSet, Validation) {
  EXPECT_THROW(iset(5, {1, 1}), InvalidArgument);
  EXPECT_THROW(iset(5, {0}), InvalidArgument);
  EXPECT_THROW(iset(5, {6}), InvalidArgument);
  EXPECT_THROW(iset(0, {}), InvalidArgument);
  const auto A = iset(10, {7, 2, 5});
  EXPECT_EQ(A.elements(), (std::vector<std::int64_t>{2, 5, 7}));
  EXPECT_TRUE(A.contains(5));
  EXPECT_FALSE(A.contains(6));
  EXPECT_DOUBLE_EQ(A.density(), 0.3);
}

TEST(Isqrt, ExactNearSquares) {
  for (std::uint64_t r : {0ull, 1ull, 2ull, 3037000499ull, 4294967295ull}) {
    const auto sq = r * r;
    EXPECT_EQ(isqrt(sq), r);
    if (sq > 0) {
      EXPECT_EQ(isqrt(sq - 1), r - 1);
    }
    EXPECT_TRUE(is_square(sq));
    if (r > 1) {
      EXPECT_FALSE(is_square(sq + 1));
    }
  }
  EXPECT_EQ(isqrt(UINT64_MAX), 4294967295ull);
}

TEST(IsSdf, Examples) {
  EXPECT_TRUE(is_sdf(iset(3, {1, 3})));
  const auto w = find_square_difference(iset(2, {1, 2}));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->a, 2);
  EXPECT_EQ(w->b, 1);
  EXPECT_EQ(w->n, 1);
  const auto w2 = find_square_difference(iset(5, {1, 5}));
  ASSERT_TRUE(w2);
  EXPECT_EQ(w2->n, 2);
  EXPECT_TRUE(is_sdf(iset(1, {})));
}

TEST(IsSdf, MatchesPairwiseOracle) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto A = random_subset(400, 0.02 + 0.01 * static_cast<double>(seed % 10), seed);
    EXPECT_EQ(is_sdf(A), pairwise_sdf(A)) << seed;
    if (const auto w = find_square_difference(A)) {
      EXPECT_TRUE(A.contains(w->a));
      EXPECT_TRUE(A.contains(w->b));
      EXPECT_EQ(w->a - w->b, w->n * w->n);
    }
  }
}

TEST(Greedy, OracleSizes) {
  const auto& o = testing::oracle();
  EXPECT_EQ(greedy_sdf(1).elements(), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(greedy_sdf(10).elements(), o["greedy10"].get<std::vector<std::int64_t>>());
  for (const auto& [N, size] : o["greedy"].items()) {
    const auto A = greedy_sdf(std::stoll(N));
    EXPECT_EQ(A.size(), size.get<std::size_t>()) << N;
    EXPECT_TRUE(is_sdf(A));
  }
}

TEST(Greedy, PrefixStable) {
  const auto big = greedy_sdf(3000);
  for (std::int64_t N : {1, 17, 500, 2999}) {
    const auto small = greedy_sdf(N);
    for (const auto a : small) EXPECT_TRUE(big.contains(a));
    for (const auto a : big) {
      if (a <= N) {
        EXPECT_TRUE(small.contains(a));
      }
    }
  }
}

TEST(Planted, OracleSizesAndResidues) {
  for (const auto& c : testing::oracle()["planted"]) {
    const auto q = c["q"].get<std::int64_t>();
    const auto r = c["r"].get<std::int64_t>();
    const auto A = planted_sdf(c["N"].get<std::int64_t>(), q, r);
    EXPECT_EQ(A.size(), c["size"].get<std::size_t>());
    EXPECT_TRUE(is_sdf(A));
    for (const auto a : A) EXPECT_EQ(((a - r) % q + q) % q, 0);
  }
  EXPECT_THROW(planted_sdf(100, 3, 4), InvalidArgument);
  EXPECT_THROW(planted_sdf(100, 3, 0), InvalidArgument);
}

TEST(Planted, ThinnedIsSeededAndSdf) {
  const auto a = planted_sdf(2000, 3, 2, 9, 0.5);
  const auto b = planted_sdf(2000, 3, 2, 9, 0.5);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(is_sdf(a));
  EXPECT_LT(a.size(), planted_sdf(2000, 3, 2).size() * 2);
}

TEST(RandomConstructions, SdfAndDeterministic) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto A = random_sdf(1500, seed);
    EXPECT_TRUE(is_sdf(A));
    EXPECT_EQ(A, random_sdf(1500, seed));
    // Maximality: every outsider creates a square difference.
    for (std::int64_t x = 1; x <= 1500; x += 37) {
      if (A.contains(x)) continue;
      auto v = A.elements();
      v.push_back(x);
      EXPECT_FALSE(is_sdf(IntegerSet::from_elements(1500, v))) << x;
    }
  }
  EXPECT_EQ(random_subset(100, 0.0, 1).size(), 0u);
  EXPECT_EQ(random_subset(100, 1.0, 1).size(), 100u);
}

}  // namespace
}  // namespace sqdiff
