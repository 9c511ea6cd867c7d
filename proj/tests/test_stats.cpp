#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lcslab/random.hpp"
#include "lcslab/stats.hpp"

namespace lcslab {
namespace {

TEST(SampleMoments, KnownValues) {
  const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(sample_mean(xs), 5.0);
  EXPECT_DOUBLE_EQ(sample_variance(xs), 32.0 / 7.0);
  const std::vector<double> one{3};
  EXPECT_DOUBLE_EQ(sample_variance(one), 0.0);
}

TEST(VarianceCi, BracketsAndNarrows) {
  const auto [lo, hi] = variance_ci(10.0, 31);
  EXPECT_LT(lo, 10.0);
  EXPECT_GT(hi, 10.0);
  // chi2 quantiles for 30 dof: 16.791 and 46.979
  EXPECT_NEAR(lo, 300.0 / 46.979, 1e-2);
  EXPECT_NEAR(hi, 300.0 / 16.791, 1e-2);
  const auto [lo2, hi2] = variance_ci(10.0, 1001);
  EXPECT_GT(lo2, lo);
  EXPECT_LT(hi2, hi);
}

TEST(ChiSquare, PerfectFitAndStrongMisfit) {
  const std::vector<std::uint64_t> even{100, 100, 100, 100};
  const std::vector<double> q(4, 0.25);
  const ChiSquareResult fit = chi_square_gof(even, q);
  EXPECT_DOUBLE_EQ(fit.statistic, 0.0);
  EXPECT_EQ(fit.dof, 3);
  EXPECT_NEAR(fit.p_value, 1.0, 1e-12);
  const std::vector<std::uint64_t> skew{190, 70, 70, 70};
  EXPECT_LT(chi_square_gof(skew, q).p_value, 1e-6);
}

TEST(ChiSquare, KnownStatistic) {
  const std::vector<std::uint64_t> obs{10, 20, 30};
  const std::vector<double> probs{0.2, 0.3, 0.5};
  // expected 12, 18, 30
  const ChiSquareResult res = chi_square_gof(obs, probs);
  EXPECT_NEAR(res.statistic, 4.0 / 12 + 4.0 / 18, 1e-12);
  EXPECT_EQ(res.dof, 2);
  EXPECT_NEAR(res.p_value, std::exp(-res.statistic / 2), 1e-12);
}

TEST(ChiSquare, PoolsSparseCells) {
  const std::vector<std::uint64_t> obs{50, 48, 1, 1};
  const std::vector<double> probs{0.49, 0.49, 0.01, 0.01};
  const ChiSquareResult res = chi_square_gof(obs, probs);
  EXPECT_EQ(res.dof, 1);
}

TEST(ChiSquare, UniformDrawsPass) {
  Rng rng(derive_seed(3, "test.chi"));
  std::vector<std::uint64_t> counts(10, 0);
  for (int i = 0; i < 20000; ++i) ++counts[rng.below(10)];
  const std::vector<double> probs(10, 0.1);
  EXPECT_GT(chi_square_gof(counts, probs).p_value, 0.001);
}

TEST(LinearFit, ExactLineAndNoise) {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  const std::vector<double> ys{3, 5, 7, 9, 11};
  const LinearFit f = linear_fit(xs, ys);
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.intercept, 1.0, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
  const std::vector<double> zs{1, -1, 1, -1, 1};
  EXPECT_LT(linear_fit(xs, zs).r2, 0.2);
}

TEST(Random, DeriveSeedSeparatesTagsAndIndices) {
  EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
  EXPECT_NE(derive_seed(1, "a", 0), derive_seed(1, "a", 1));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(2, "a"));
  EXPECT_EQ(derive_seed(7, "ladder", 3), derive_seed(7, "ladder", 3));
}

TEST(Random, BelowIsInRangeAndUnbiased) {
  Rng rng(5);
  std::vector<std::uint64_t> counts(3, 0);
  for (int i = 0; i < 30000; ++i) {
    const auto v = rng.below(3);
    ASSERT_LT(v, 3u);
    ++counts[v];
  }
  const std::vector<double> probs(3, 1.0 / 3);
  EXPECT_GT(chi_square_gof(counts, probs).p_value, 0.001);
  const double u = rng.uniform01();
  EXPECT_TRUE(u >= 0.0 && u < 1.0);
}

TEST(Random, ShufflePermutes) {
  Rng rng(9);
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
  rng.shuffle(std::span<int>(v));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7}));
}

}  // namespace
}  // namespace lcslab
