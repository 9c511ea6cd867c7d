#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lcslab/block_model.hpp"
#include "lcslab/domain.hpp"
#include "lcslab/lcs.hpp"
#include "lcslab/random.hpp"
#include "lcslab/stats.hpp"

namespace lcslab {

/// Fraction of `reps` fresh strings whose (T, Z) falls in make_domain(params, c).
double domain_coverage(const ModelParams& params, double c, std::uint64_t reps, Seed seed);

struct Calibration {
  double c = 0.0;
  double coverage = 0.0;
  std::uint64_t reps = 0;
  std::vector<std::pair<double, double>> grid;  // (c, coverage) up to the returned c
};

/// Smallest c on the grid step, 2*step, ... whose empirical coverage reaches
/// `target`. All grid points are scored on the same simulated strings, so
/// coverage is monotone along the grid.
Calibration calibrate_c(const ModelParams& params, double target, std::uint64_t reps, Seed seed,
                        double step = 0.25);

struct MinProbResult {
  double min_np = 0.0;      // min of n * P((T,Z,R) = (t,z,r)); may underflow to 0
  double log_min_np = 0.0;  // same minimum in log space
  TzrStats argmin;
  std::uint64_t admissible = 0;
};

/// Exact scan over every admissible (t, z, r) with (t, z) in the domain and
/// r in [0, l]. Throws EmptyDomain when nothing is admissible.
MinProbResult min_prob_over_D(const ModelParams& params, const DomainD& domain);

struct RatioResult {
  double k_hat = 0.0;  // max of sqrt(n) |P(z+4 | t,r) / P(z | t,r) - 1|
  TzrStats argmax;
  std::uint64_t pairs = 0;
};

/// Exact scan over pairs z, z+4 that are both admissible and inside the domain.
RatioResult ratio_check(const ModelParams& params, const DomainD& domain);

/// (z, P(z+4 | t, r) / P(z | t, r)) for every admissible pair inside the domain at fixed (t, r).
std::vector<std::pair<std::int64_t, double>> z_ratios(const ModelParams& params, std::int64_t t, std::int64_t r,
                                                      const DomainD& domain);

struct VarianceRow {
  int n = 0;
  std::uint64_t replicates = 0;
  bool has_lcs = false;
  double mean_L = 0.0;
  double var_L = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_Z = 0.0;
  double var_Z = 0.0;
  double z_ci_low = 0.0;
  double z_ci_high = 0.0;
};

struct VarianceTable {
  int l = 0;
  std::vector<VarianceRow> rows;
};

/// For each n simulates `reps` independent (X, Y) pairs and records the
/// sample variance of Z (always) and of L_n (when an engine is given).
VarianceTable variance_scan(int l, std::span<const int> ns, std::uint64_t reps, Seed seed,
                            std::optional<Engine> engine = Engine::BitParallel);

// Integer map f on [z_min, z_min + values.size()) with the slope parameters it
// is claimed to satisfy.
struct SlopeMapSpec {
  double epsilon = 0.0;
  double m = 0.0;
  double beta = 0.0;
  std::int64_t z_min = 0;
  std::vector<std::int64_t> values;

  std::int64_t z_max() const { return z_min + static_cast<std::int64_t>(values.size()) - 1; }
  std::int64_t operator()(std::int64_t z) const { return values[static_cast<std::size_t>(z - z_min)]; }
};

SlopeMapSpec make_slope_map(double epsilon, double m, double beta, std::int64_t z_min, std::int64_t z_max,
                            const std::function<std::int64_t(std::int64_t)>& f);

/// Throws SpecViolation naming the first pair that breaks either slope
/// condition (growth of at least epsilon/8 over gaps >= m, at most beta over
/// gaps < m).
void validate_slope_map(const SlopeMapSpec& spec);

struct BonettoResult {
  double lhs = 0.0;  // sample VAR[f(B)]
  double rhs = 0.0;
  double var_b = 0.0;
  bool holds = false;
};

/// Validates the map, then compares sample VAR[f(B)] with
/// (eps^2/64)(1 - 16 (eps/8 + beta) m / (eps sqrt(VAR[B]))) VAR[B].
BonettoResult check_bonetto_refined(const SlopeMapSpec& spec, std::span<const std::int64_t> b_samples);

/// Binomial(trials, 1/2) draws from popcounts; trials must be a multiple of 64.
std::vector<std::int64_t> binomial_half_samples(std::uint64_t trials, std::uint64_t count, Seed seed);

/// 2 exp(-delta^2 n / (2 a^2)).
double hoeffding_bound(double a, double delta, std::uint64_t n);

struct HoeffdingResult {
  double empirical = 0.0;
  double bound = 0.0;
  std::uint64_t exceed = 0;
  std::uint64_t reps = 0;
};

/// Empirical P(|mean of n fair +-1 variables| >= delta) over `reps` runs next
/// to the analytic bound.
HoeffdingResult hoeffding_tail_check(double a, double delta, std::uint64_t n, std::uint64_t reps, Seed seed);

struct TotalVarianceResult {
  double var_L = 0.0;
  double expected_conditional_var = 0.0;  // sum_o P(O=o) VAR[L | O=o]
  double sigma = 0.0;                     // Monte Carlo scale of var_L
  double coverage = 0.0;                  // P(O = 1)
  bool holds = false;                     // var_L >= E[VAR[L|O]] - 3 sigma
};

/// VAR[L] >= E[VAR[L | O]] on simulated pairs, O the indicator of (T, Z) in D.
TotalVarianceResult total_variance_check(const ModelParams& params, double c, std::uint64_t reps, Seed seed,
                                         Engine engine = Engine::BitParallel);

}  // namespace lcslab
