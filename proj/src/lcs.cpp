#include "lcslab/lcs.hpp"

#include <algorithm>
#include <bit>

#include "lcslab/error.hpp"

namespace lcslab {

namespace {

void check_input(std::string_view s, std::size_t cap, const char* name) {
  if (s.size() > cap)
    throw LabError(ErrorKind::InputTooLarge,
                   std::string(name) + " has " + std::to_string(s.size()) + " symbols, cap is " + std::to_string(cap));
  for (char c : s)
    if (c != '0' && c != '1')
      throw LabError(ErrorKind::InvalidSymbol, std::string(name) + " contains a symbol other than '0'/'1'");
}

}  // namespace

std::string_view to_string(Engine engine) {
  return engine == Engine::Reference ? "reference" : "bitparallel";
}

Engine parse_engine(std::string_view name) {
  if (name == "reference") return Engine::Reference;
  if (name == "bitparallel") return Engine::BitParallel;
  throw LabError(ErrorKind::InvalidParams, "unknown engine '" + std::string(name) + "'");
}

namespace {

// Cell values never exceed min(m, n), so short inputs use 16-bit cells and
// twice the SIMD lanes.
template <typename Cell>
std::size_t reference_sweep(std::string_view x, std::string_view y) {
  const std::size_t m = x.size();
  const std::size_t n = y.size();

  // Cell (i, j) lives at index i of the buffer for diagonal i + j.
  std::vector<Cell> xs(m), yr(n);
  for (std::size_t i = 0; i < m; ++i) xs[i] = static_cast<Cell>(x[i]);
  for (std::size_t k = 0; k < n; ++k) yr[k] = static_cast<Cell>(y[n - 1 - k]);

  std::vector<Cell> buf_a(m + 2, 0), buf_b(m + 2, 0), buf_c(m + 2, 0);
  Cell* prev2 = buf_a.data();
  Cell* prev1 = buf_b.data();
  Cell* cur = buf_c.data();

  for (std::size_t d = 2; d <= m + n; ++d) {
    const std::size_t lo = d > n + 1 ? d - n : 1;
    const std::size_t hi = std::min(m, d - 1);
    // y[d - i - 1] == yr[n - d + i]; lo >= d - n keeps the offset non-negative.
    const std::size_t count = hi - lo + 1;
    const Cell* __restrict ys = yr.data() + (lo + n - d);
    const Cell* __restrict xp = xs.data() + (lo - 1);
    const Cell* __restrict p1 = prev1 + (lo - 1);
    const Cell* __restrict p2 = prev2 + (lo - 1);
    Cell* __restrict out = cur + lo;
    for (std::size_t k = 0; k < count; ++k) {
      const Cell take = p2[k] + 1;
      const Cell skip = std::max(p1[k], p1[k + 1]);
      out[k] = xp[k] == ys[k] ? take : skip;
    }
    if (d <= m) cur[d] = 0;  // cell (d, 0)
    Cell* spare = prev2;
    prev2 = prev1;
    prev1 = cur;
    cur = spare;
  }
  return prev1[m];
}

}  // namespace

std::size_t lcs_reference(std::string_view x, std::string_view y) {
  if (x.empty() || y.empty()) return 0;
  if (std::min(x.size(), y.size()) < 0xffff) return reference_sweep<std::uint16_t>(x, y);
  return reference_sweep<std::uint32_t>(x, y);
}

PreparedLcs::PreparedLcs(std::string_view fixed)
    : length_(fixed.size()), words_((fixed.size() + 63) / 64), zero_mask_(words_, 0), one_mask_(words_, 0) {
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (fixed[i] == '0') zero_mask_[i >> 6] |= bit;
    else one_mask_[i >> 6] |= bit;
  }
}

std::size_t PreparedLcs::against(std::string_view other) const {
  if (length_ == 0 || other.empty()) return 0;
  // V has a zero at position i for each increment of the LCS row; the
  // update is V' = (V + (V & M)) | (V & ~M) with a carry chain across words.
  std::vector<std::uint64_t> v(words_, ~std::uint64_t{0});
  for (char c : other) {
    const std::uint64_t* mask = c == '0' ? zero_mask_.data() : one_mask_.data();
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      const std::uint64_t vw = v[w];
      const std::uint64_t u = vw & mask[w];
      const std::uint64_t s1 = vw + u;
      const std::uint64_t c1 = s1 < vw;
      const std::uint64_t s2 = s1 + carry;
      const std::uint64_t c2 = s2 < s1;
      carry = c1 | c2;
      v[w] = s2 | (vw & ~mask[w]);
    }
  }
  std::size_t zeros = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t word = ~v[w];
    if (w + 1 == words_ && (length_ & 63) != 0) word &= (std::uint64_t{1} << (length_ & 63)) - 1;
    zeros += static_cast<std::size_t>(std::popcount(word));
  }
  return zeros;
}

std::size_t lcs_bitparallel(std::string_view x, std::string_view y) {
  if (x.size() > y.size()) std::swap(x, y);
  return PreparedLcs(x).against(y);
}

std::size_t lcs_len(std::string_view x, std::string_view y, Engine engine, std::size_t cap) {
  check_input(x, cap, "x");
  check_input(y, cap, "y");
  return engine == Engine::Reference ? lcs_reference(x, y) : lcs_bitparallel(x, y);
}

std::vector<LcsOutcome> lcs_len_batch(std::span<const std::pair<std::string, std::string>> pairs, Engine engine,
                                      std::size_t cap, unsigned threads) {
  std::vector<LcsOutcome> out(pairs.size());
  parallel_for(
      pairs.size(),
      [&](std::size_t i) {
        try {
          out[i].length = lcs_len(pairs[i].first, pairs[i].second, engine, cap);
        } catch (const LabError& e) {
          out[i].error = e.what();
        }
      },
      threads);
  return out;
}

}  // namespace lcslab
