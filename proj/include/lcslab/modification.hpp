#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lcslab/block_model.hpp"
#include "lcslab/random.hpp"

namespace lcslab {

enum class StepKind { Tilde, Half };

// One entry of a modification trace. Indices point into the block list of the
// string the step was applied to; a half step fills only one of them.
struct ModStep {
  std::size_t step = 0;
  StepKind kind = StepKind::Tilde;
  std::optional<std::size_t> short_index;
  std::optional<std::size_t> long_index;

  bool operator==(const ModStep&) const = default;
};

struct Modified {
  BlockString string;
  ModStep step;
};

/// Sets block `short_index` (length l-1) and block `long_index` (length l+1)
/// to length l. Throws NoModifiableBlocks if the indices do not point at such
/// blocks.
BlockString apply_tilde(const BlockString& s, std::size_t short_index, std::size_t long_index);

/// One uniformly chosen l-1 block and one uniformly chosen l+1 block become
/// length l. T, R and the length are unchanged; Z grows by 4.
Modified tilde(const BlockString& s, Rng& rng);
Modified tilde(const BlockString& s, Seed seed);

struct TildeOutcome {
  BlockString string;
  std::size_t short_index = 0;
  std::size_t long_index = 0;
  std::uint64_t denominator = 1;  // probability is 1 / denominator

  double probability() const { return 1.0 / static_cast<double>(denominator); }
};

/// All n1 * n3 outcomes of tilde, each with probability 1 / (n1 * n3).
std::vector<TildeOutcome> tilde_enumerate(const BlockString& s);

/// Half step: one block of length l-1 or l+1 becomes length l, Z grows by 2.
/// The +-1 symbol is absorbed by the rest so the length stays n: growing an
/// l-1 block needs rest >= 1, shrinking an l+1 block needs rest <= l-1. The
/// side is picked with equal probability among the feasible ones; throws
/// NoModifiableBlocks when neither side is feasible.
Modified half_tilde(const BlockString& s, Rng& rng);
Modified half_tilde(const BlockString& s, Seed seed);

/// E[L~ - L | X, Y] for one tilde modification; `exact` estimates have
/// std_error 0.
struct DriftEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t outcomes = 0;  // n1 * n3
  std::uint64_t draws = 0;
  bool exact = false;
};

inline constexpr std::uint64_t kDefaultDriftCap = 100'000;

/// Averages the LCS change over every tilde outcome. Throws TooLarge when
/// n1 * n3 exceeds `cap`, NoModifiableBlocks when n1 or n3 is zero.
DriftEstimate drift_exact(const BlockString& s, std::string_view y, std::uint64_t cap = kDefaultDriftCap);

enum class SamplingScheme {
  WithReplacement,     // k independent tilde draws
  WithoutReplacement,  // k distinct outcomes; k = n1 * n3 reproduces drift_exact
};

/// Monte Carlo estimate from k tilde draws; std_error uses the unbiased sample
/// variance (with the finite population correction when drawing without
/// replacement). Requires k >= 2.
DriftEstimate drift_sampled(const BlockString& s, std::string_view y, std::uint64_t k, Seed seed,
                            SamplingScheme scheme = SamplingScheme::WithReplacement);

}  // namespace lcslab
