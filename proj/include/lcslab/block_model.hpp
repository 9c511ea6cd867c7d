#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcslab/random.hpp"

namespace lcslab {

/// Block parameter l (complete blocks have length l-1, l or l+1) and the
/// string length n.
struct ModelParams {
  int l = 10;
  int n = 4096;

  /// Throws InvalidParams unless l >= 2 and n >= 1.
  void validate() const;
};

enum class Bit : std::uint8_t { Zero = 0, One = 1 };

inline Bit flip(Bit b) { return b == Bit::Zero ? Bit::One : Bit::Zero; }
inline char to_char(Bit b) { return b == Bit::Zero ? '0' : '1'; }

/// Number of blocks of length l-1, l and l+1.
struct BlockCounts {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t n3 = 0;

  std::int64_t total() const { return n1 + n2 + n3; }
  bool operator==(const BlockCounts&) const = default;
};

/// T = block count, Z = N_l - N_{l-1} - N_{l+1}, R = rest length.
struct TzrStats {
  std::int64_t t = 0;
  std::int64_t z = 0;
  std::int64_t r = 0;

  bool operator==(const TzrStats&) const = default;
};

// A length-n binary string that remembers how it was cut out of the infinite
// block sequence. The trailing `rest` symbols belong to a block that was cut at
// position n; they are not counted as a block.
struct BlockString {
  int l = 0;
  Bit initial = Bit::Zero;
  std::vector<int> blocks;
  int rest = 0;
  bool truncated = false;

  std::int64_t length() const;
  std::string symbols() const;
  BlockCounts counts() const;

  /// Throws InvalidParams if any block-string invariant is broken; when
  /// `expected_n` is non-negative the total length must equal it.
  void validate(std::int64_t expected_n = -1) const;

  bool operator==(const BlockString&) const = default;
};

/// i.i.d. draws, uniform on {l-1, l, l+1}.
std::vector<int> sample_block_lengths(const ModelParams& params, Seed seed, std::size_t count);

/// Cuts the block sequence `blocks` (which must cover at least n symbols) to its
/// first n symbols. A block that crosses position n becomes the rest.
BlockString cut_to_length(const ModelParams& params, Bit initial, std::span<const int> blocks);

/// First n symbols of a fresh infinite block sequence; fair initial symbol.
BlockString build_string(const ModelParams& params, Seed seed);

/// Block lengths per run of raw symbols. The provenance of the last run is
/// lost, so a trailing run of length < l-1 is taken as rest and a trailing run
/// in {l-1, l, l+1} as a complete block. Throws InvalidParams when an interior
/// run has a length outside {l-1, l, l+1}.
BlockString classify_symbols(int l, std::string_view symbols);

TzrStats compute_tzr(const BlockString& s);
TzrStats tzr_from_counts(const BlockCounts& counts, std::int64_t r);

/// Inverts (T,Z,R) to block counts through the affine map. Throws InvalidTzr
/// unless all three counts are non-negative integers and r is in [0, l].
BlockCounts counts_from_tzr(const ModelParams& params, const TzrStats& stats);

/// Non-throwing form for scans over many candidate triples.
std::optional<BlockCounts> try_counts_from_tzr(const ModelParams& params, const TzrStats& stats);

/// P(B > r) under the rest convention: 1 for r = 0, |{b in {l-1,l,l+1} : b > r}| / 3 otherwise.
double rest_survival(int l, std::int64_t r);

// log k! for k in [0, size). Filled from lgamma once.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(std::size_t max_k);
  double operator()(std::int64_t k) const;
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

// Evaluates log P((T,Z,R) = (t,z,r)) for a fixed model; holds the log-factorial
// table so scans over a domain do not rebuild it.
class TzrLaw {
 public:
  explicit TzrLaw(const ModelParams& params);

  /// Throws InvalidTzr for inadmissible triples.
  double log_prob(const TzrStats& stats) const;
  double log_prob(const BlockCounts& counts, std::int64_t r) const;

  const ModelParams& params() const { return params_; }

 private:
  ModelParams params_;
  LogFactorialTable log_fact_;
};

/// log P((T,Z,R) = stats); one-off convenience over TzrLaw.
double joint_prob_tzr(const ModelParams& params, const TzrStats& stats);

/// Uniform draw from the strings with the block multiset fixed by `stats`.
BlockString sample_conditional(const ModelParams& params, const TzrStats& stats, Seed seed);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// 2 * multinomial(t; n1, n2, n3), saturating just above `cap`.
std::uint64_t xi_size(const BlockCounts& counts, std::uint64_t cap);

/// Every string of the conditioned set, initial symbol 0 first, arrangements in
/// lexicographic order. Throws TooLarge when the set exceeds `cap`.
std::vector<BlockString> enumerate_xi(const ModelParams& params, const TzrStats& stats,
                                      std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace lcslab
