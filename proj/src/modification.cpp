#include "lcslab/modification.hpp"

#include <cmath>
#include <unordered_map>

#include "lcslab/error.hpp"
#include "lcslab/lcs.hpp"
#include "lcslab/parallel.hpp"

namespace lcslab {

namespace {

struct Candidates {
  std::vector<std::size_t> shorts;
  std::vector<std::size_t> longs;
};

Candidates candidates(const BlockString& s) {
  Candidates c;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    if (s.blocks[i] == s.l - 1) c.shorts.push_back(i);
    else if (s.blocks[i] == s.l + 1) c.longs.push_back(i);
  }
  return c;
}

Candidates require_pairs(const BlockString& s) {
  Candidates c = candidates(s);
  if (c.shorts.empty() || c.longs.empty())
    throw LabError(ErrorKind::NoModifiableBlocks, "tilde needs a block of length l-1 and one of length l+1 (n1=" +
                                                      std::to_string(c.shorts.size()) +
                                                      ", n3=" + std::to_string(c.longs.size()) + ")");
  return c;
}

}  // namespace

BlockString apply_tilde(const BlockString& s, std::size_t short_index, std::size_t long_index) {
  if (short_index >= s.blocks.size() || long_index >= s.blocks.size() || s.blocks[short_index] != s.l - 1 ||
      s.blocks[long_index] != s.l + 1)
    throw LabError(ErrorKind::NoModifiableBlocks, "indices do not select an l-1 block and an l+1 block");
  BlockString out = s;
  out.blocks[short_index] = s.l;
  out.blocks[long_index] = s.l;
  return out;
}

Modified tilde(const BlockString& s, Rng& rng) {
  const Candidates c = require_pairs(s);
  const std::size_t si = c.shorts[rng.below(c.shorts.size())];
  const std::size_t li = c.longs[rng.below(c.longs.size())];
  return Modified{apply_tilde(s, si, li), ModStep{0, StepKind::Tilde, si, li}};
}

Modified tilde(const BlockString& s, Seed seed) {
  Rng rng(seed);
  return tilde(s, rng);
}

std::vector<TildeOutcome> tilde_enumerate(const BlockString& s) {
  const Candidates c = require_pairs(s);
  const std::uint64_t denominator = static_cast<std::uint64_t>(c.shorts.size()) * c.longs.size();
  std::vector<TildeOutcome> out;
  out.reserve(static_cast<std::size_t>(denominator));
  for (std::size_t si : c.shorts)
    for (std::size_t li : c.longs) out.push_back(TildeOutcome{apply_tilde(s, si, li), si, li, denominator});
  return out;
}

Modified half_tilde(const BlockString& s, Rng& rng) {
  const Candidates c = candidates(s);
  const bool can_grow = !c.shorts.empty() && s.rest >= 1;
  const bool can_shrink = !c.longs.empty() && s.rest <= s.l - 1;
  if (!can_grow && !can_shrink)
    throw LabError(ErrorKind::NoModifiableBlocks,
                   "half step has no feasible side (n1=" + std::to_string(c.shorts.size()) +
                       ", n3=" + std::to_string(c.longs.size()) + ", rest=" + std::to_string(s.rest) + ")");
  bool grow = can_grow;
  if (can_grow && can_shrink) grow = rng.coin();

  Modified m{s, ModStep{0, StepKind::Half, std::nullopt, std::nullopt}};
  if (grow) {
    const std::size_t i = c.shorts[rng.below(c.shorts.size())];
    m.string.blocks[i] = s.l;
    m.string.rest -= 1;
    m.step.short_index = i;
  } else {
    const std::size_t i = c.longs[rng.below(c.longs.size())];
    m.string.blocks[i] = s.l;
    m.string.rest += 1;
    m.step.long_index = i;
  }
  m.string.truncated = m.string.rest > 0;
  return m;
}

Modified half_tilde(const BlockString& s, Seed seed) {
  Rng rng(seed);
  return half_tilde(s, rng);
}

DriftEstimate drift_exact(const BlockString& s, std::string_view y, std::uint64_t cap) {
  const Candidates c = require_pairs(s);
  const std::uint64_t n3 = c.longs.size();
  const std::uint64_t outcomes = static_cast<std::uint64_t>(c.shorts.size()) * n3;
  if (outcomes > cap)
    throw LabError(ErrorKind::TooLarge, std::to_string(outcomes) + " tilde outcomes exceed cap " + std::to_string(cap));

  const PreparedLcs prepared(y);
  const auto base = static_cast<std::int64_t>(prepared.against(s.symbols()));
  std::vector<std::int64_t> diffs(static_cast<std::size_t>(outcomes));
  parallel_for(diffs.size(), [&](std::size_t p) {
    const BlockString mod = apply_tilde(s, c.shorts[p / n3], c.longs[p % n3]);
    diffs[p] = static_cast<std::int64_t>(prepared.against(mod.symbols())) - base;
  });
  std::int64_t sum = 0;
  for (auto d : diffs) sum += d;

  DriftEstimate e;
  e.mean = static_cast<double>(sum) / static_cast<double>(outcomes);
  e.outcomes = outcomes;
  e.draws = outcomes;
  e.exact = true;
  return e;
}

DriftEstimate drift_sampled(const BlockString& s, std::string_view y, std::uint64_t k, Seed seed,
                            SamplingScheme scheme) {
  if (k < 2) throw LabError(ErrorKind::InvalidParams, "drift_sampled needs k >= 2");
  const Candidates c = require_pairs(s);
  const std::uint64_t n1 = c.shorts.size();
  const std::uint64_t n3 = c.longs.size();
  const std::uint64_t outcomes = n1 * n3;
  if (scheme == SamplingScheme::WithoutReplacement && k > outcomes)
    throw LabError(ErrorKind::InvalidParams, "k exceeds the number of distinct outcomes");

  // Draw all outcome indices up front so the estimate does not depend on how
  // the LCS evaluations are scheduled.
  Rng rng(seed);
  std::vector<std::uint64_t> picks(static_cast<std::size_t>(k));
  if (scheme == SamplingScheme::WithReplacement) {
    for (auto& p : picks) {
      const std::uint64_t si = rng.below(n1);
      const std::uint64_t li = rng.below(n3);
      p = si * n3 + li;
    }
  } else {
    // Partial Fisher-Yates over [0, outcomes) with a sparse swap table.
    std::unordered_map<std::uint64_t, std::uint64_t> swapped;
    auto at = [&](std::uint64_t i) {
      auto it = swapped.find(i);
      return it == swapped.end() ? i : it->second;
    };
    for (std::uint64_t i = 0; i < k; ++i) {
      const std::uint64_t j = i + rng.below(outcomes - i);
      const std::uint64_t vi = at(i);
      const std::uint64_t vj = at(j);
      swapped[i] = vj;
      swapped[j] = vi;
      picks[static_cast<std::size_t>(i)] = vj;
    }
  }

  const PreparedLcs prepared(y);
  const auto base = static_cast<std::int64_t>(prepared.against(s.symbols()));
  std::vector<std::int64_t> diffs(picks.size());
  parallel_for(picks.size(), [&](std::size_t i) {
    const BlockString mod = apply_tilde(s, c.shorts[picks[i] / n3], c.longs[picks[i] % n3]);
    diffs[i] = static_cast<std::int64_t>(prepared.against(mod.symbols())) - base;
  });

  std::int64_t sum = 0;
  for (auto d : diffs) sum += d;
  const double kd = static_cast<double>(k);
  const double mean = static_cast<double>(sum) / kd;
  double ss = 0.0;
  for (auto d : diffs) ss += (static_cast<double>(d) - mean) * (static_cast<double>(d) - mean);
  double variance_of_mean = ss / (kd - 1.0) / kd;
  if (scheme == SamplingScheme::WithoutReplacement)
    variance_of_mean *= static_cast<double>(outcomes - k) / static_cast<double>(outcomes - 1);

  DriftEstimate e;
  e.mean = mean;
  e.std_error = std::sqrt(variance_of_mean);
  e.outcomes = outcomes;
  e.draws = k;
  e.exact = false;
  return e;
}

}  // namespace lcslab
