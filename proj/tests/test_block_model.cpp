#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "lcslab/block_model.hpp"
#include "lcslab/error.hpp"
#include "lcslab/stats.hpp"
#include "oracles.hpp"

namespace lcslab {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const LabError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a LabError";
  return ErrorKind::IoError;
}

TEST(SampleBlockLengths, SupportIsLMinusOneToLPlusOne) {
  const auto v = sample_block_lengths({3, 100}, 7, 6);
  ASSERT_EQ(v.size(), 6u);
  for (int b : v) EXPECT_TRUE(b >= 2 && b <= 4) << b;
}

TEST(SampleBlockLengths, FrequenciesAreUniform) {
  const std::size_t count = 30000;
  const auto v = sample_block_lengths({3, 100}, 11, count);
  const double tol = 3.0 * std::sqrt(2.0 / 9.0 / count);
  for (int len = 2; len <= 4; ++len) {
    const double freq = static_cast<double>(std::count(v.begin(), v.end(), len)) / count;
    EXPECT_NEAR(freq, 1.0 / 3.0, tol) << "length " << len;
  }
}

TEST(SampleBlockLengths, EmptyAndDeterministic) {
  EXPECT_TRUE(sample_block_lengths({3, 100}, 1, 0).empty());
  EXPECT_EQ(sample_block_lengths({5, 100}, 99, 50), sample_block_lengths({5, 100}, 99, 50));
}

TEST(BuildString, ThreeFourTwoBlocks) {
  const std::vector<int> blocks{3, 4, 2, 3};
  const BlockString s = cut_to_length({3, 9}, Bit::Zero, blocks);
  EXPECT_EQ(s.symbols(), "000111100");
  EXPECT_EQ(s.rest, 0);
  EXPECT_FALSE(s.truncated);
}

TEST(BuildString, CutBlockBecomesRest) {
  const std::vector<int> blocks{2, 3, 4, 3, 2, 4};
  const BlockString s = cut_to_length({3, 16}, Bit::Zero, blocks);
  EXPECT_EQ(s.symbols(), "0011100001110011");
  EXPECT_EQ(s.blocks, (std::vector<int>{2, 3, 4, 3, 2}));
  EXPECT_EQ(s.rest, 2);
  EXPECT_TRUE(s.truncated);
  EXPECT_EQ(compute_tzr(s), (TzrStats{5, -1, 2}));
}

TEST(BuildString, ExactFitHasNoRest) {
  const std::vector<int> blocks{4, 4, 2};
  const BlockString s = cut_to_length({3, 8}, Bit::One, blocks);
  EXPECT_EQ(s.symbols(), "11110000");
  EXPECT_EQ(s.rest, 0);
  EXPECT_FALSE(s.truncated);
}

TEST(BuildString, ShortBlockListIsRejected) {
  const std::vector<int> blocks{3, 3};
  EXPECT_EQ(kind_of([&] { cut_to_length({3, 9}, Bit::Zero, blocks); }), ErrorKind::InvalidParams);
}

TEST(BuildString, InvariantsHoldAcrossSeeds) {
  for (int l : {2, 3, 10}) {
    for (Seed seed = 0; seed < 200; ++seed) {
      const ModelParams p{l, 50 + static_cast<int>(seed % 37)};
      const BlockString s = build_string(p, seed);
      EXPECT_NO_THROW(s.validate(p.n));
      EXPECT_EQ(s.symbols().size(), static_cast<std::size_t>(p.n));
      EXPECT_EQ(s.truncated, s.rest > 0);
    }
  }
  EXPECT_EQ(build_string({4, 300}, 5), build_string({4, 300}, 5));
}

TEST(ComputeTzr, WorkedExampleWithShortTail) {
  const BlockString s = classify_symbols(3, "000111100011001");
  EXPECT_EQ(s.blocks, (std::vector<int>{3, 4, 3, 2, 2}));
  EXPECT_EQ(s.rest, 1);
  EXPECT_EQ(compute_tzr(s), (TzrStats{5, -1, 1}));
  EXPECT_EQ(s.counts(), (BlockCounts{2, 2, 1}));
}

TEST(ComputeTzr, SingleBlock) {
  const BlockString s = cut_to_length({3, 3}, Bit::Zero, std::vector<int>{3, 2});
  EXPECT_EQ(compute_tzr(s), (TzrStats{1, 1, 0}));
}

TEST(ClassifySymbols, TrailingRunInBlockRangeIsTakenAsBlock) {
  // The raw symbols of the truncated example lose the cut: the final "11" is
  // read as a complete block, not as the rest.
  const BlockString s = classify_symbols(3, "0011100001110011");
  EXPECT_EQ(s.rest, 0);
  EXPECT_EQ(compute_tzr(s), (TzrStats{6, -2, 0}));
  EXPECT_EQ(kind_of([] { classify_symbols(3, "0000011"); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { classify_symbols(3, "00a"); }), ErrorKind::InvalidSymbol);
}

TEST(CountsFromTzr, WorkedExample) {
  EXPECT_EQ(counts_from_tzr({3, 15}, {5, -1, 1}), (BlockCounts{2, 2, 1}));
  EXPECT_EQ(counts_from_tzr({3, 3}, {1, 1, 0}), (BlockCounts{0, 1, 0}));
}

TEST(CountsFromTzr, RejectsInadmissibleTriples) {
  EXPECT_EQ(kind_of([] { counts_from_tzr({3, 15}, {5, 0, 1}); }), ErrorKind::InvalidTzr);
  EXPECT_EQ(kind_of([] { counts_from_tzr({3, 15}, {1, 1, 1}); }), ErrorKind::InvalidTzr);
  EXPECT_EQ(kind_of([] { counts_from_tzr({3, 15}, {5, -1, 4}); }), ErrorKind::InvalidTzr);
  EXPECT_EQ(kind_of([] { counts_from_tzr({3, 15}, {-1, 1, 0}); }), ErrorKind::InvalidTzr);
  EXPECT_FALSE(try_counts_from_tzr({3, 15}, {5, 0, 1}).has_value());
}

TEST(CountsFromTzr, RoundTripsEveryCountVector) {
  const int l = 3;
  for (int n1 = 0; n1 <= 50; ++n1)
    for (int n2 = 0; n1 + n2 <= 50; ++n2)
      for (int n3 = 0; n1 + n2 + n3 <= 50; ++n3)
        for (int r = 0; r <= l; ++r) {
          const BlockCounts c{n1, n2, n3};
          const int n = n1 * (l - 1) + n2 * l + n3 * (l + 1) + r;
          ASSERT_EQ(counts_from_tzr({l, n}, tzr_from_counts(c, r)), c);
        }
}

TEST(JointProb, SmallCasesMatchMultinomial) {
  // (1,1,1), r=0: 3! (1/3)^3 = 2/9
  EXPECT_NEAR(std::exp(joint_prob_tzr({3, 9}, tzr_from_counts({1, 1, 1}, 0))), 2.0 / 9.0, 1e-15);
  // (2,0,0), r=0: (1/3)^2
  EXPECT_NEAR(std::exp(joint_prob_tzr({3, 4}, tzr_from_counts({2, 0, 0}, 0))), 1.0 / 9.0, 1e-15);
}

TEST(JointProb, LogSpaceMatchesExactRational) {
  for (int l : {3, 5}) {
    for (int n1 = 0; n1 <= 20; ++n1)
      for (int n2 = 0; n1 + n2 <= 20; ++n2)
        for (int n3 = 0; n1 + n2 + n3 <= 20; ++n3)
          for (int r = 0; r <= l; ++r) {
            const int n = n1 * (l - 1) + n2 * l + n3 * (l + 1) + r;
            if (n == 0) continue;
            const double got = std::exp(joint_prob_tzr({l, n}, tzr_from_counts({n1, n2, n3}, r)));
            const long double want = oracle::exact_joint_prob(l, n1, n2, n3, r);
            ASSERT_NEAR(got, static_cast<double>(want), 1e-12) << n1 << "," << n2 << "," << n3 << " r=" << r;
          }
  }
}

TEST(JointProb, MarginalOverTzMatchesRenewalLaw) {
  for (int l : {2, 3, 4}) {
    for (int n = l + 1; n <= 40; ++n) {
      const ModelParams p{l, n};
      const TzrLaw law(p);
      const auto oracle_rest = oracle::rest_distribution(l, n);
      long double grand_total = 0.0L;
      for (int r = 0; r <= l; ++r) {
        long double total = 0.0L;
        for (std::int64_t t = 0; t <= n; ++t)
          for (std::int64_t z = -t; z <= t; ++z)
            if (auto c = try_counts_from_tzr(p, {t, z, r})) total += std::exp(law.log_prob(*c, r));
        EXPECT_NEAR(static_cast<double>(total), static_cast<double>(oracle_rest[static_cast<std::size_t>(r)]), 1e-9)
            << "l=" << l << " n=" << n << " r=" << r;
        grand_total += total;
      }
      EXPECT_NEAR(static_cast<double>(grand_total), 1.0, 1e-9);
    }
  }
}

TEST(RestSurvival, CountsLongerBlocks) {
  EXPECT_DOUBLE_EQ(rest_survival(3, 0), 1.0);
  EXPECT_DOUBLE_EQ(rest_survival(3, 1), 1.0);
  EXPECT_DOUBLE_EQ(rest_survival(3, 2), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(rest_survival(3, 3), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(rest_survival(3, 4), 0.0);
}

TEST(SampleConditional, ReproducesTheConditioningTriple) {
  const ModelParams p{4, 200};
  const TzrStats s{50, -10, 0};
  ASSERT_TRUE(try_counts_from_tzr(p, s).has_value());
  for (Seed seed = 0; seed < 100; ++seed) {
    const BlockString x = sample_conditional(p, s, seed);
    EXPECT_EQ(compute_tzr(x), s);
    EXPECT_NO_THROW(x.validate(p.n));
  }
  EXPECT_EQ(kind_of([&] { sample_conditional(p, {50, -9, 0}, 1); }), ErrorKind::InvalidTzr);
}

TEST(SampleConditional, UniformOverFourStrings) {
  // counts (1,1,0), r=0, l=3, n=5: 2 orderings x 2 initial symbols
  const ModelParams p{3, 5};
  const TzrStats s = tzr_from_counts({1, 1, 0}, 0);
  const auto support = oracle::brute_force_xi(3, 1, 1, 0, 0);
  ASSERT_EQ(support, (std::vector<std::string>{"00011", "00111", "11000", "11100"}));
  std::map<std::string, std::uint64_t> seen;
  for (Seed seed = 0; seed < 10000; ++seed) ++seen[sample_conditional(p, s, seed).symbols()];
  ASSERT_EQ(seen.size(), 4u);
  std::vector<std::uint64_t> observed;
  for (const auto& str : support) observed.push_back(seen[str]);
  const std::vector<double> probs(4, 0.25);
  EXPECT_GT(chi_square_gof(observed, probs).p_value, 0.001);
}

TEST(EnumerateXi, SizesMatchCounting) {
  EXPECT_EQ(enumerate_xi({3, 5}, tzr_from_counts({1, 1, 0}, 0)).size(), 4u);
  const auto single = enumerate_xi({3, 3}, tzr_from_counts({0, 1, 0}, 0));
  ASSERT_EQ(single.size(), 2u);
  EXPECT_EQ(single[0].symbols(), "000");
  EXPECT_EQ(single[1].symbols(), "111");
  EXPECT_EQ(enumerate_xi({3, 9}, tzr_from_counts({1, 1, 1}, 0)).size(), 12u);
}

TEST(EnumerateXi, MatchesBruteForceScan) {
  struct Case { int l, n1, n2, n3, r; };
  for (const Case& c : {Case{3, 1, 1, 1, 0}, Case{3, 2, 1, 1, 1}, Case{3, 1, 2, 1, 2}, Case{2, 2, 2, 2, 1},
                        Case{4, 1, 1, 1, 3}, Case{3, 0, 3, 1, 0}, Case{2, 3, 1, 2, 2}}) {
    const int n = c.n1 * (c.l - 1) + c.n2 * c.l + c.n3 * (c.l + 1) + c.r;
    const auto listed = enumerate_xi({c.l, n}, tzr_from_counts({c.n1, c.n2, c.n3}, c.r));
    std::vector<std::string> got;
    for (const auto& s : listed) got.push_back(s.symbols());
    std::sort(got.begin(), got.end());
    EXPECT_TRUE(std::adjacent_find(got.begin(), got.end()) == got.end()) << "duplicates";
    EXPECT_EQ(got, oracle::brute_force_xi(c.l, c.n1, c.n2, c.n3, c.r));
  }
}

TEST(EnumerateXi, CapIsEnforced) {
  const ModelParams p{3, 90};
  const TzrStats s = tzr_from_counts({10, 10, 10}, 0);
  EXPECT_EQ(kind_of([&] { enumerate_xi(p, s); }), ErrorKind::TooLarge);
  EXPECT_EQ(xi_size({1, 1, 1}, 100), 12u);
  EXPECT_EQ(kind_of([&] { enumerate_xi({3, 9}, tzr_from_counts({1, 1, 1}, 0), 11); }), ErrorKind::TooLarge);
}

TEST(ModelParams, Validation) {
  EXPECT_EQ(kind_of([] { ModelParams{1, 10}.validate(); }), ErrorKind::InvalidParams);
  EXPECT_EQ(kind_of([] { ModelParams{3, 0}.validate(); }), ErrorKind::InvalidParams);
  EXPECT_NO_THROW((ModelParams{2, 3}.validate()));
}

}  // namespace
}  // namespace lcslab
