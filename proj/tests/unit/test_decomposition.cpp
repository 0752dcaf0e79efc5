#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "sqdiff/decomposition.hpp"
#include "sqdiff/error.hpp"
#include "sqdiff/random.hpp"
#include "test_support.hpp"

namespace sqdiff {
namespace {

RationalSet sample(Rng& rng, const RationalSet& pool, std::size_t size) {
  std::vector<ReducedRational> v(pool.begin(), pool.end());
  for (std::size_t i = 0; i < size; ++i) std::swap(v[i], v[i + rng.uniform(0, v.size() - i - 1)]);
  v.resize(size);
  return RationalSet::from_elements(v);
}

struct Instance {
  RationalSet A, B;
  std::vector<Rational> C;
  std::int64_t L = 2;
  std::int64_t n = 1;
};

Instance random_instance(Rng& rng) {
  static const RationalSet pool = enumerate_rationals(30);
  Instance in;
  in.A = sample(rng, pool, static_cast<std::size_t>(rng.uniform_int(1, 25)));
  in.B = sample(rng, pool, static_cast<std::size_t>(rng.uniform_int(1, 25)));
  std::set<Rational> c;
  for (int i = 0; i < 12; ++i) {
    const auto& a = in.A[rng.uniform(0, in.A.size() - 1)];
    const auto& b = in.B[rng.uniform(0, in.B.size() - 1)];
    const Rational d = Rational(a) - Rational(b);
    if (!d.is_zero()) c.insert(d);
    c.insert(Rational(pool[rng.uniform(0, pool.size() - 1)]));
  }
  in.C.assign(c.begin(), c.end());
  for (const auto& b : in.B) in.L = std::max(in.L, b.den());
  in.n = std::max<std::int64_t>(1, in.B.max_per_denominator());
  return in;
}

TEST(ColorEdge, Examples) {
  EXPECT_EQ(color_edge(reduce(1, 3), reduce(1, 5)), (EdgeColor{1, 1}));
  EXPECT_EQ(color_edge(reduce(1, 6), reduce(1, 10)), (EdgeColor{2, 2}));
  EXPECT_EQ(color_edge(reduce(1, 2), reduce(1, 2)), (EdgeColor{2, 2}));
}

TEST(ColorEdge, MatchesOracle) {
  for (const auto& c : testing::oracle()["colour"]) {
    const auto col = color_edge(testing::rr(c["x"]), testing::rr(c["y"]));
    EXPECT_EQ(col.d, c["d"].get<std::int64_t>()) << c.dump();
    EXPECT_EQ(col.f, c["f"].get<std::int64_t>()) << c.dump();
    EXPECT_EQ(col.d % col.f, 0);
  }
}

TEST(SplitEdges, ExtremeThresholds) {
  const auto Q = enumerate_rationals(8);
  const auto none = split_edges(Q, Q, 1e9);
  EXPECT_TRUE(none.E1.empty());
  EXPECT_EQ(none.E2.size(), Q.size() * Q.size());
  const auto all = split_edges(Q, Q, 1e-9);
  EXPECT_TRUE(all.E2.empty());
}

TEST(SplitEdges, PartitionAgainstRecount) {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const auto in = random_instance(rng);
    const double T = 3;
    const auto dec = split_edges(in.A, in.B, T);
    EXPECT_EQ(dec.E1.size() + dec.E2.size(), in.A.size() * in.B.size());
    for (std::size_t a = 0; a < in.A.size(); ++a) {
      for (std::size_t b = 0; b < in.B.size(); ++b) {
        const auto col = color_edge(in.A[a], in.B[b]);
        std::size_t same = 0;
        for (std::size_t b2 = 0; b2 < in.B.size(); ++b2) same += color_edge(in.A[a], in.B[b2]) == col;
        const bool popular = static_cast<double>(same * tau3(static_cast<std::uint64_t>(in.A[a].den()))) >= T;
        EXPECT_EQ(dec.is_popular(a, b), popular);
      }
    }
  }
}

TEST(CountR, TrivialCases) {
  const auto Q = enumerate_rationals(6);
  for (std::int64_t k = 1; k <= 6; ++k) {
    for (std::int64_t d = 1; d <= k; ++d) {
      if (k % d != 0) continue;
      const auto r = count_R(Q, Q, d, 1, k, 1.0);
      EXPECT_GE(r, 0);
      EXPECT_LE(r, 1);
    }
  }
  EXPECT_EQ(count_R(Q, Q, 1, 1, 7, 1.0), 0);
}

TEST(CountR, Est2OnRandomInstances) {
  Rng rng(55);
  for (int i = 0; i < 30; ++i) {
    const auto in = random_instance(rng);
    const double T = 0.5 + 3.0 * rng.uniform01();
    const auto dec = split_edges(in.A, in.B, T);
    for (const auto& a : in.A) {
      const std::int64_t k = a.den();
      for (std::int64_t d = 1; d <= k; ++d) {
        if (k % d != 0) continue;
        for (std::int64_t f = 1; f <= d; ++f) {
          if (d % f != 0) continue;
          const auto r = dec.R(d, f, k);
          EXPECT_EQ(r, count_R(in.A, in.B, d, f, k, T));
          const double bound = static_cast<double>(in.L * in.n) / (static_cast<double>(d) * T) *
                               static_cast<double>(tau3(static_cast<std::uint64_t>(k)));
          EXPECT_LE(static_cast<double>(r), bound * (1 + 1e-12));
        }
      }
    }
  }
}

TEST(Decomposition, FullSmallInstancePasses) {
  const auto Q = enumerate_rationals(6);
  const auto C = Q.values();
  const auto rep = verify_decomposition_bounds(Q, Q, C, 2.0, weight_one(), 6, Q.max_per_denominator());
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << " " << c.witness;
  EXPECT_TRUE(rep.all_passed());
  EXPECT_NE(rep.find("residue_count"), nullptr);
  EXPECT_NE(rep.find("injectivity"), nullptr);
  EXPECT_NEAR(rep.total_F1 + rep.total_F2, rep.direct_total, 1e-9 * std::max(1.0, rep.direct_total));
}

TEST(Decomposition, RandomInstancesPass) {
  Rng rng(101);
  for (int i = 0; i < 40; ++i) {
    const auto in = random_instance(rng);
    const auto w = weight_tau3_power(2 * (i % 2));
    const double T = 0.5 + 4.0 * rng.uniform01();
    const auto rep = verify_decomposition_bounds(in.A, in.B, in.C, T, w, in.L, in.n);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << i << " " << c.name << " " << c.witness;
  }
}

TEST(Decomposition, EmptyBAndPreconditions) {
  const auto A = enumerate_rationals(5);
  const std::vector<Rational> C = {Rational::fraction(1, 2)};
  const auto rep = verify_decomposition_bounds(A, RationalSet{}, C, 1.0, weight_one(), 5, 1);
  EXPECT_TRUE(rep.all_passed());
  EXPECT_EQ(rep.total_F1 + rep.total_F2, 0.0);
  EXPECT_THROW(verify_decomposition_bounds(A, A, C, 1.0, weight_one(), 4, 10), PreconditionError);
  EXPECT_THROW(verify_decomposition_bounds(A, A, C, 1.0, weight_one(), 5, 1), PreconditionError);
  const std::vector<Rational> zero = {Rational(0)};
  EXPECT_THROW(verify_decomposition_bounds(A, A, zero, 1.0, weight_one(), 5, 4), PreconditionError);
}

TEST(OptimalT, ScalingAndBound) {
  const auto A = enumerate_rationals(7);
  const auto C = A.values();
  const std::int64_t L = 7;
  const std::int64_t n = A.max_per_denominator();
  const double T = optimal_T(A, A, C, weight_one(), L, n);
  std::vector<Rational> doubled = C;
  for (const auto& c : C) doubled.push_back(c + Rational(1));  // same denominators, sum doubles
  EXPECT_NEAR(optimal_T(A, A, doubled, weight_one(), L, n) / T, std::sqrt(2.0), 1e-12);

  Rng rng(77);
  for (int i = 0; i < 20; ++i) {
    const auto in = random_instance(rng);
    const double t = optimal_T(in.A, in.B, in.C, weight_one(), in.L, in.n);
    const auto rep = verify_decomposition_bounds(in.A, in.B, in.C, t, weight_one(), in.L, in.n);
    EXPECT_LE(rep.direct_total, 2.0 * geometric_mean_bound(in.A, in.C, weight_one(), in.L, in.n) * (1 + 1e-12));
  }
}

TEST(DyadicLevels, Examples) {
  ConvolutionMap f;
  f[Rational(1)] = 1;
  f[Rational(2)] = 2;
  f[Rational(3)] = 3;
  f[Rational(4)] = 4;
  const auto levels = dyadic_levels(f);
  ASSERT_EQ(levels.size(), 3u);
  EXPECT_EQ(levels[0].j, 0);
  EXPECT_EQ(levels[0].support.size(), 1u);
  EXPECT_EQ(levels[1].j, 1);
  EXPECT_EQ(levels[1].support.size(), 2u);
  EXPECT_EQ(levels[2].j, 2);
}

TEST(DyadicLevels, RecombineConvolution) {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const auto in = random_instance(rng);
    const auto f = convolution_power(in.B, 2);
    std::size_t total = 0;
    for (const auto& level : dyadic_levels(f)) {
      for (const auto& x : level.support) {
        const auto v = f.at(x);
        EXPECT_GE(v, std::uint64_t{1} << level.j);
        EXPECT_LT(v, std::uint64_t{1} << (level.j + 1));
        ++total;
      }
    }
    EXPECT_EQ(total, f.size());
  }
}

TEST(Induction, MatchesOracle) {
  EXPECT_EQ(induction_statistic(testing::rset({"1/2", "1/3"}), 2, 1), BigInt(334));
  for (const auto& c : testing::oracle()["induction"]) {
    const auto B = testing::rset_json(c["B"]);
    EXPECT_EQ(induction_statistic(B, c["j"].get<int>(), c["t"].get<int>()), BigInt(c["value"].get<std::string>()))
        << c.dump();
  }
}

TEST(Induction, ZeroWeightIsEnergy) {
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const auto in = random_instance(rng);
    for (int m : {1, 2, 3}) {
      if (std::pow(static_cast<double>(in.B.size()), m) > 2e5) continue;
      EXPECT_EQ(induction_statistic(in.B, m, 0), BigInt(energy_mitm(in.B, m)));
    }
  }
  const auto single = testing::rset({"2/7"});
  EXPECT_EQ(induction_statistic(single, 3, 1), BigInt(tau3(7) * tau3(7)));
  EXPECT_GT(induction_ratio(testing::rset({"1/2", "1/3", "2/3"}), 2, 0), 0.0);
}

}  // namespace
}  // namespace sqdiff
