#include "lcslab/block_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lcslab/error.hpp"

namespace lcslab {

namespace {

int draw_block(Rng& rng, int l) { return l - 1 + static_cast<int>(rng.below(3)); }

std::string describe(const TzrStats& s) {
  return "(t=" + std::to_string(s.t) + ", z=" + std::to_string(s.z) + ", r=" + std::to_string(s.r) + ")";
}

// C(top, k) saturating at cap + 1.
unsigned __int128 binomial_saturating(std::int64_t top, std::int64_t k, unsigned __int128 cap) {
  k = std::min(k, top - k);
  unsigned __int128 c = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned __int128>(top - k + i) / static_cast<unsigned __int128>(i);
    if (c > cap) return cap + 1;
  }
  return c;
}

}  // namespace

void ModelParams::validate() const {
  if (l < 2) throw LabError(ErrorKind::InvalidParams, "l must be >= 2, got " + std::to_string(l));
  if (n < 1) throw LabError(ErrorKind::InvalidParams, "n must be >= 1, got " + std::to_string(n));
}

std::int64_t BlockString::length() const {
  return std::accumulate(blocks.begin(), blocks.end(), std::int64_t{0}) + rest;
}

std::string BlockString::symbols() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(length()));
  Bit b = initial;
  for (int len : blocks) {
    out.append(static_cast<std::size_t>(len), to_char(b));
    b = flip(b);
  }
  out.append(static_cast<std::size_t>(rest), to_char(b));
  return out;
}

BlockCounts BlockString::counts() const {
  BlockCounts c;
  for (int len : blocks) {
    if (len == l - 1) ++c.n1;
    else if (len == l) ++c.n2;
    else if (len == l + 1) ++c.n3;
  }
  return c;
}

void BlockString::validate(std::int64_t expected_n) const {
  if (l < 2) throw LabError(ErrorKind::InvalidParams, "block string has l < 2");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] < l - 1 || blocks[i] > l + 1)
      throw LabError(ErrorKind::InvalidParams,
                     "block " + std::to_string(i) + " has length " + std::to_string(blocks[i]));
  }
  if (rest < 0 || rest > l) throw LabError(ErrorKind::InvalidParams, "rest length out of [0, l]");
  if (rest == 0 && truncated) throw LabError(ErrorKind::InvalidParams, "empty rest marked truncated");
  if (expected_n >= 0 && length() != expected_n)
    throw LabError(ErrorKind::InvalidParams, "length " + std::to_string(length()) + " != n=" + std::to_string(expected_n));
}

std::vector<int> sample_block_lengths(const ModelParams& params, Seed seed, std::size_t count) {
  Rng rng(seed);
  std::vector<int> out(count);
  for (auto& b : out) b = draw_block(rng, params.l);
  return out;
}

BlockString cut_to_length(const ModelParams& params, Bit initial, std::span<const int> blocks) {
  BlockString s;
  s.l = params.l;
  s.initial = initial;
  std::int64_t used = 0;
  for (int len : blocks) {
    if (used == params.n) break;
    if (used + len > params.n) {
      s.rest = static_cast<int>(params.n - used);
      s.truncated = true;
      used = params.n;
      break;
    }
    s.blocks.push_back(len);
    used += len;
  }
  if (used != params.n)
    throw LabError(ErrorKind::InvalidParams, "block sequence covers only " + std::to_string(used) + " symbols");
  return s;
}

BlockString build_string(const ModelParams& params, Seed seed) {
  params.validate();
  Rng rng(seed);
  Bit initial = rng.coin() ? Bit::One : Bit::Zero;
  std::vector<int> blocks;
  blocks.reserve(static_cast<std::size_t>(params.n / (params.l - 1) + 2));
  std::int64_t covered = 0;
  while (covered < params.n) {
    blocks.push_back(draw_block(rng, params.l));
    covered += blocks.back();
  }
  return cut_to_length(params, initial, blocks);
}

BlockString classify_symbols(int l, std::string_view symbols) {
  BlockString s;
  s.l = l;
  if (symbols.empty()) return s;
  for (char c : symbols)
    if (c != '0' && c != '1') throw LabError(ErrorKind::InvalidSymbol, "expected only '0' and '1'");
  s.initial = symbols.front() == '0' ? Bit::Zero : Bit::One;
  std::vector<int> runs;
  std::size_t i = 0;
  while (i < symbols.size()) {
    std::size_t j = i;
    while (j < symbols.size() && symbols[j] == symbols[i]) ++j;
    runs.push_back(static_cast<int>(j - i));
    i = j;
  }
  for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
    if (runs[k] < l - 1 || runs[k] > l + 1)
      throw LabError(ErrorKind::InvalidParams, "interior run of length " + std::to_string(runs[k]));
  }
  int last = runs.back();
  runs.pop_back();
  if (last < l - 1) {
    s.rest = last;
    s.truncated = true;
  } else if (last <= l + 1) {
    runs.push_back(last);
  } else {
    throw LabError(ErrorKind::InvalidParams, "trailing run of length " + std::to_string(last));
  }
  s.blocks = std::move(runs);
  return s;
}

TzrStats tzr_from_counts(const BlockCounts& c, std::int64_t r) {
  return TzrStats{c.total(), c.n2 - c.n1 - c.n3, r};
}

TzrStats compute_tzr(const BlockString& s) { return tzr_from_counts(s.counts(), s.rest); }

std::optional<BlockCounts> try_counts_from_tzr(const ModelParams& params, const TzrStats& s) {
  const std::int64_t l = params.l;
  if (s.t < 0 || s.r < 0 || s.r > l) return std::nullopt;
  const std::int64_t body = params.n - s.r;
  const std::int64_t q1 = (2 * l + 1) * s.t - s.z - 2 * body;
  const std::int64_t q2 = s.t + s.z;
  const std::int64_t q3 = -(2 * l - 1) * s.t - s.z + 2 * body;
  if (q1 % 4 != 0 || q2 % 2 != 0 || q3 % 4 != 0) return std::nullopt;
  BlockCounts c{q1 / 4, q2 / 2, q3 / 4};
  if (c.n1 < 0 || c.n2 < 0 || c.n3 < 0) return std::nullopt;
  return c;
}

BlockCounts counts_from_tzr(const ModelParams& params, const TzrStats& s) {
  const std::int64_t l = params.l;
  if (s.t < 0 || s.r < 0 || s.r > l)
    throw LabError(ErrorKind::InvalidTzr, describe(s) + " outside t >= 0, r in [0, l]");
  const std::int64_t body = params.n - s.r;
  // 4*N_{l-1}, 2*N_l, 4*N_{l+1} from the affine inverse.
  const std::int64_t q1 = (2 * l + 1) * s.t - s.z - 2 * body;
  const std::int64_t q2 = s.t + s.z;
  const std::int64_t q3 = -(2 * l - 1) * s.t - s.z + 2 * body;
  if (q1 % 4 != 0 || q2 % 2 != 0 || q3 % 4 != 0)
    throw LabError(ErrorKind::InvalidTzr, describe(s) + " gives non-integer block counts");
  BlockCounts c{q1 / 4, q2 / 2, q3 / 4};
  if (c.n1 < 0 || c.n2 < 0 || c.n3 < 0)
    throw LabError(ErrorKind::InvalidTzr, describe(s) + " gives negative block counts");
  return c;
}

double rest_survival(int l, std::int64_t r) {
  if (r == 0) return 1.0;
  int above = 0;
  for (int b = l - 1; b <= l + 1; ++b)
    if (b > r) ++above;
  return above / 3.0;
}

LogFactorialTable::LogFactorialTable(std::size_t max_k) : values_(max_k + 1) {
  for (std::size_t k = 0; k <= max_k; ++k) values_[k] = std::lgamma(static_cast<double>(k) + 1.0);
}

double LogFactorialTable::operator()(std::int64_t k) const {
  if (k >= 0 && static_cast<std::size_t>(k) < values_.size()) return values_[static_cast<std::size_t>(k)];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

TzrLaw::TzrLaw(const ModelParams& params)
    : params_(params), log_fact_(static_cast<std::size_t>(std::max(params.n, 0)) + 1) {}

double TzrLaw::log_prob(const TzrStats& stats) const {
  return log_prob(counts_from_tzr(params_, stats), stats.r);
}

double TzrLaw::log_prob(const BlockCounts& c, std::int64_t r) const {
  const double survival = rest_survival(params_.l, r);
  if (survival == 0.0) return -std::numeric_limits<double>::infinity();
  const std::int64_t t = c.total();
  return log_fact_(t) - log_fact_(c.n1) - log_fact_(c.n2) - log_fact_(c.n3) -
         static_cast<double>(t) * std::log(3.0) + std::log(survival);
}

double joint_prob_tzr(const ModelParams& params, const TzrStats& stats) {
  return TzrLaw(params).log_prob(stats);
}

BlockString sample_conditional(const ModelParams& params, const TzrStats& stats, Seed seed) {
  const BlockCounts c = counts_from_tzr(params, stats);
  BlockString s;
  s.l = params.l;
  s.blocks.reserve(static_cast<std::size_t>(c.total()));
  s.blocks.insert(s.blocks.end(), static_cast<std::size_t>(c.n1), params.l - 1);
  s.blocks.insert(s.blocks.end(), static_cast<std::size_t>(c.n2), params.l);
  s.blocks.insert(s.blocks.end(), static_cast<std::size_t>(c.n3), params.l + 1);
  Rng rng(seed);
  s.initial = rng.coin() ? Bit::One : Bit::Zero;
  rng.shuffle(std::span<int>(s.blocks));
  s.rest = static_cast<int>(stats.r);
  s.truncated = stats.r > 0;
  return s;
}

std::uint64_t xi_size(const BlockCounts& c, std::uint64_t cap) {
  const unsigned __int128 limit = cap;
  unsigned __int128 total = binomial_saturating(c.total(), c.n1, limit);
  if (total > limit) return cap + 1;
  total *= binomial_saturating(c.n2 + c.n3, c.n2, limit);
  if (total > limit) return cap + 1;
  total *= 2;
  return total > limit ? cap + 1 : static_cast<std::uint64_t>(total);
}

std::vector<BlockString> enumerate_xi(const ModelParams& params, const TzrStats& stats, std::uint64_t cap) {
  const BlockCounts c = counts_from_tzr(params, stats);
  const std::uint64_t size = xi_size(c, cap);
  if (size > cap)
    throw LabError(ErrorKind::TooLarge, "conditioned set exceeds cap " + std::to_string(cap));

  std::vector<int> blocks;
  blocks.insert(blocks.end(), static_cast<std::size_t>(c.n1), params.l - 1);
  blocks.insert(blocks.end(), static_cast<std::size_t>(c.n2), params.l);
  blocks.insert(blocks.end(), static_cast<std::size_t>(c.n3), params.l + 1);

  std::vector<BlockString> out;
  out.reserve(static_cast<std::size_t>(size));
  for (Bit initial : {Bit::Zero, Bit::One}) {
    std::vector<int> arrangement = blocks;
    do {
      BlockString s;
      s.l = params.l;
      s.initial = initial;
      s.blocks = arrangement;
      s.rest = static_cast<int>(stats.r);
      s.truncated = stats.r > 0;
      out.push_back(std::move(s));
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  }
  return out;
}

}  // namespace lcslab
