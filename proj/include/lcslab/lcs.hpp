#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcslab/parallel.hpp"

namespace lcslab {

enum class Engine { Reference, BitParallel };

std::string_view to_string(Engine engine);
/// Accepts "reference" or "bitparallel"; throws InvalidParams otherwise.
Engine parse_engine(std::string_view name);

inline constexpr std::size_t kMaxLcsInput = std::size_t{1} << 20;

/// Length of the LCS of two '0'/'1' strings. Throws InvalidSymbol on other
/// characters and InputTooLarge when either input exceeds `cap` symbols.
std::size_t lcs_len(std::string_view x, std::string_view y, Engine engine = Engine::BitParallel,
                    std::size_t cap = kMaxLcsInput);

/// Quadratic dynamic program swept along anti-diagonals with three rolling
/// diagonals. No input checks.
std::size_t lcs_reference(std::string_view x, std::string_view y);

/// Word-parallel row encoding, 64 cells per machine word. No input checks.
std::size_t lcs_bitparallel(std::string_view x, std::string_view y);

// Match masks of one fixed string, reused across many partner strings (the
// drift and ladder loops compare many variants of X against the same Y).
class PreparedLcs {
 public:
  explicit PreparedLcs(std::string_view fixed);

  std::size_t against(std::string_view other) const;
  std::size_t size() const { return length_; }

 private:
  std::size_t length_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> zero_mask_;
  std::vector<std::uint64_t> one_mask_;
};

struct LcsOutcome {
  std::optional<std::size_t> length;
  std::string error;  // empty on success
};

/// Element-wise lcs_len. Failures are reported in the slot of the failing pair;
/// output order matches input order regardless of threads.
std::vector<LcsOutcome> lcs_len_batch(std::span<const std::pair<std::string, std::string>> pairs,
                                      Engine engine = Engine::BitParallel,
                                      std::size_t cap = kMaxLcsInput,
                                      unsigned threads = worker_count());

}  // namespace lcslab
