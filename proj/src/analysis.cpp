#include "lcslab/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "lcslab/error.hpp"
#include "lcslab/parallel.hpp"

namespace lcslab {

namespace {

std::uint64_t rep_index(int n, std::uint64_t rep) { return (static_cast<std::uint64_t>(n) << 32) | rep; }

std::vector<TzrStats> simulate_tzr(const ModelParams& params, std::uint64_t reps, Seed seed, std::string_view tag) {
  std::vector<TzrStats> out(static_cast<std::size_t>(reps));
  parallel_for(out.size(), [&](std::size_t i) { out[i] = compute_tzr(build_string(params, derive_seed(seed, tag, i))); });
  return out;
}

double covered_fraction(std::span<const TzrStats> samples, const DomainD& d) {
  std::uint64_t hits = 0;
  for (const auto& s : samples)
    if (d.contains(s.t, s.z)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

}  // namespace

double domain_coverage(const ModelParams& params, double c, std::uint64_t reps, Seed seed) {
  if (reps == 0) throw LabError(ErrorKind::InvalidParams, "coverage needs reps > 0");
  const DomainD d = make_domain(params, c);
  const auto samples = simulate_tzr(params, reps, seed, "coverage");
  return covered_fraction(samples, d);
}

Calibration calibrate_c(const ModelParams& params, double target, std::uint64_t reps, Seed seed, double step) {
  if (!(target > 0.0 && target < 1.0)) throw LabError(ErrorKind::InvalidParams, "target must lie in (0, 1)");
  if (reps == 0) throw LabError(ErrorKind::InvalidParams, "calibration needs reps > 0");
  if (!(step > 0.0)) throw LabError(ErrorKind::InvalidParams, "grid step must be > 0");
  params.validate();
  const auto samples = simulate_tzr(params, reps, seed, "calibrate");
  Calibration cal;
  cal.reps = reps;
  for (std::uint64_t k = 1;; ++k) {
    const double c = step * static_cast<double>(k);
    const double cov = covered_fraction(samples, make_domain(params, c));
    cal.grid.emplace_back(c, cov);
    if (cov >= target) {
      cal.c = c;
      cal.coverage = cov;
      return cal;
    }
  }
}

MinProbResult min_prob_over_D(const ModelParams& params, const DomainD& domain) {
  const TzrLaw law(params);
  MinProbResult res;
  res.log_min_np = std::numeric_limits<double>::infinity();
  const double log_n = std::log(static_cast<double>(params.n));
  for (std::int64_t t = std::max<std::int64_t>(domain.t_lo, 0); t <= domain.t_hi; ++t) {
    for (std::int64_t z = domain.z_lo; z <= domain.z_hi; ++z) {
      for (std::int64_t r = 0; r <= params.l; ++r) {
        const TzrStats s{t, z, r};
        const auto counts = try_counts_from_tzr(params, s);
        if (!counts) continue;
        ++res.admissible;
        const double log_np = log_n + law.log_prob(*counts, r);
        if (log_np < res.log_min_np) {
          res.log_min_np = log_np;
          res.argmin = s;
        }
      }
    }
  }
  if (res.admissible == 0) throw LabError(ErrorKind::EmptyDomain, "no admissible (t, z, r) in the domain");
  res.min_np = std::exp(res.log_min_np);
  return res;
}

std::vector<std::pair<std::int64_t, double>> z_ratios(const ModelParams& params, std::int64_t t, std::int64_t r,
                                                      const DomainD& domain) {
  const TzrLaw law(params);
  std::vector<std::pair<std::int64_t, double>> out;
  for (std::int64_t z = domain.z_lo; z + 4 <= domain.z_hi; ++z) {
    const auto lo = try_counts_from_tzr(params, TzrStats{t, z, r});
    if (!lo) continue;
    const auto hi = try_counts_from_tzr(params, TzrStats{t, z + 4, r});
    if (!hi) continue;
    out.emplace_back(z, std::exp(law.log_prob(*hi, r) - law.log_prob(*lo, r)));
  }
  return out;
}

RatioResult ratio_check(const ModelParams& params, const DomainD& domain) {
  const double root_n = std::sqrt(static_cast<double>(params.n));
  RatioResult res;
  for (std::int64_t t = std::max<std::int64_t>(domain.t_lo, 0); t <= domain.t_hi; ++t) {
    for (std::int64_t r = 0; r <= params.l; ++r) {
      for (const auto& [z, ratio] : z_ratios(params, t, r, domain)) {
        ++res.pairs;
        const double dev = root_n * std::abs(ratio - 1.0);
        if (dev > res.k_hat || res.pairs == 1) {
          res.k_hat = dev;
          res.argmax = TzrStats{t, z, r};
        }
      }
    }
  }
  if (res.pairs == 0) throw LabError(ErrorKind::EmptyDomain, "no admissible (z, z+4) pairs in the domain");
  return res;
}

VarianceTable variance_scan(int l, std::span<const int> ns, std::uint64_t reps, Seed seed,
                            std::optional<Engine> engine) {
  if (reps < 30) throw LabError(ErrorKind::InvalidParams, "variance scan needs reps >= 30");
  VarianceTable table;
  table.l = l;
  for (int n : ns) {
    const ModelParams params{l, n};
    params.validate();
    std::vector<double> ls(static_cast<std::size_t>(reps)), zs(static_cast<std::size_t>(reps));
    parallel_for(ls.size(), [&](std::size_t i) {
      const BlockString x = build_string(params, derive_seed(seed, "scan.x", rep_index(n, i)));
      zs[i] = static_cast<double>(compute_tzr(x).z);
      if (engine) {
        const BlockString y = build_string(params, derive_seed(seed, "scan.y", rep_index(n, i)));
        ls[i] = static_cast<double>(lcs_len(x.symbols(), y.symbols(), *engine));
      }
    });
    VarianceRow row;
    row.n = n;
    row.replicates = reps;
    row.has_lcs = engine.has_value();
    if (engine) {
      row.mean_L = sample_mean(ls);
      row.var_L = sample_variance(ls);
      std::tie(row.ci_low, row.ci_high) = variance_ci(row.var_L, reps);
    }
    row.mean_Z = sample_mean(zs);
    row.var_Z = sample_variance(zs);
    std::tie(row.z_ci_low, row.z_ci_high) = variance_ci(row.var_Z, reps);
    table.rows.push_back(row);
  }
  return table;
}

SlopeMapSpec make_slope_map(double epsilon, double m, double beta, std::int64_t z_min, std::int64_t z_max,
                            const std::function<std::int64_t(std::int64_t)>& f) {
  if (z_max < z_min) throw LabError(ErrorKind::InvalidParams, "empty map domain");
  SlopeMapSpec spec{epsilon, m, beta, z_min, {}};
  spec.values.reserve(static_cast<std::size_t>(z_max - z_min + 1));
  for (std::int64_t z = z_min; z <= z_max; ++z) spec.values.push_back(f(z));
  return spec;
}

void validate_slope_map(const SlopeMapSpec& spec) {
  if (!(spec.epsilon > 0.0) || !(spec.m > 0.0) || !(spec.beta > 0.0))
    throw LabError(ErrorKind::SpecViolation, "epsilon, m and beta must be > 0");
  if (spec.values.empty()) throw LabError(ErrorKind::SpecViolation, "map has an empty domain");
  const std::size_t size = spec.values.size();
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i; j < size; ++j) {
      const double gap = static_cast<double>(j - i);
      const double rise = static_cast<double>(spec.values[j] - spec.values[i]);
      const bool ok = gap >= spec.m ? rise >= spec.epsilon / 8.0 * gap : rise <= spec.beta * gap;
      if (!ok) {
        const std::int64_t z1 = spec.z_min + static_cast<std::int64_t>(i);
        const std::int64_t z2 = spec.z_min + static_cast<std::int64_t>(j);
        throw LabError(ErrorKind::SpecViolation, std::string(gap >= spec.m ? "growth" : "local slope") +
                                                     " condition fails at z1=" + std::to_string(z1) +
                                                     ", z2=" + std::to_string(z2));
      }
    }
  }
}

BonettoResult check_bonetto_refined(const SlopeMapSpec& spec, std::span<const std::int64_t> b_samples) {
  validate_slope_map(spec);
  if (b_samples.size() < 2) throw LabError(ErrorKind::InvalidParams, "need at least two samples of B");
  std::vector<double> bs, fs;
  bs.reserve(b_samples.size());
  fs.reserve(b_samples.size());
  for (std::int64_t b : b_samples) {
    if (b < spec.z_min || b > spec.z_max())
      throw LabError(ErrorKind::InvalidParams, "sample " + std::to_string(b) + " outside the map domain");
    bs.push_back(static_cast<double>(b));
    fs.push_back(static_cast<double>(spec(b)));
  }
  BonettoResult res;
  res.var_b = sample_variance(bs);
  if (res.var_b <= 0.0) throw LabError(ErrorKind::InvalidParams, "samples of B are degenerate");
  res.lhs = sample_variance(fs);
  const double eps = spec.epsilon;
  res.rhs = eps * eps / 64.0 * (1.0 - 16.0 * (eps / 8.0 + spec.beta) * spec.m / (eps * std::sqrt(res.var_b))) * res.var_b;
  res.holds = res.lhs >= res.rhs;
  return res;
}

std::vector<std::int64_t> binomial_half_samples(std::uint64_t trials, std::uint64_t count, Seed seed) {
  if (trials % 64 != 0) throw LabError(ErrorKind::InvalidParams, "trials must be a multiple of 64");
  Rng rng(seed);
  std::vector<std::int64_t> out(static_cast<std::size_t>(count));
  for (auto& v : out) {
    std::int64_t ones = 0;
    for (std::uint64_t w = 0; w < trials / 64; ++w) ones += std::popcount(rng.next());
    v = ones;
  }
  return out;
}

double hoeffding_bound(double a, double delta, std::uint64_t n) {
  if (!(a > 0.0) || delta < 0.0) throw LabError(ErrorKind::InvalidParams, "need a > 0 and delta >= 0");
  return 2.0 * std::exp(-delta * delta / (2.0 * a * a) * static_cast<double>(n));
}

HoeffdingResult hoeffding_tail_check(double a, double delta, std::uint64_t n, std::uint64_t reps, Seed seed) {
  if (n == 0 || reps == 0) throw LabError(ErrorKind::InvalidParams, "need n > 0 and reps > 0");
  HoeffdingResult res;
  res.bound = hoeffding_bound(a, delta, n);
  res.reps = reps;
  const std::uint64_t full_words = n / 64;
  const unsigned tail_bits = static_cast<unsigned>(n % 64);
  const double threshold = delta * static_cast<double>(n) - 1e-9;
  std::vector<std::uint8_t> exceeded(static_cast<std::size_t>(reps), 0);
  parallel_for(exceeded.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, "hoeffding", i));
    std::int64_t ones = 0;
    for (std::uint64_t w = 0; w < full_words; ++w) ones += std::popcount(rng.next());
    if (tail_bits) ones += std::popcount(rng.next() >> (64 - tail_bits));
    const std::int64_t sum = 2 * ones - static_cast<std::int64_t>(n);  // sum of +-1
    exceeded[i] = std::abs(static_cast<double>(sum)) >= threshold ? 1 : 0;
  });
  for (auto e : exceeded) res.exceed += e;
  res.empirical = static_cast<double>(res.exceed) / static_cast<double>(reps);
  return res;
}

TotalVarianceResult total_variance_check(const ModelParams& params, double c, std::uint64_t reps, Seed seed,
                                         Engine engine) {
  if (reps < 4) throw LabError(ErrorKind::InvalidParams, "need reps >= 4");
  const DomainD d = make_domain(params, c);
  std::vector<double> ls(static_cast<std::size_t>(reps));
  std::vector<std::uint8_t> inside(static_cast<std::size_t>(reps));
  parallel_for(ls.size(), [&](std::size_t i) {
    const BlockString x = build_string(params, derive_seed(seed, "totalvar.x", i));
    const BlockString y = build_string(params, derive_seed(seed, "totalvar.y", i));
    const TzrStats s = compute_tzr(x);
    inside[i] = d.contains(s.t, s.z) ? 1 : 0;
    ls[i] = static_cast<double>(lcs_len(x.symbols(), y.symbols(), engine));
  });
  std::vector<double> in, out;
  for (std::size_t i = 0; i < ls.size(); ++i) (inside[i] ? in : out).push_back(ls[i]);

  TotalVarianceResult res;
  const double total = static_cast<double>(reps);
  res.var_L = sample_variance(ls);
  res.coverage = static_cast<double>(in.size()) / total;
  res.expected_conditional_var = static_cast<double>(in.size()) / total * sample_variance(in) +
                                 static_cast<double>(out.size()) / total * sample_variance(out);
  res.sigma = res.var_L * std::sqrt(2.0 / (total - 1.0));
  res.holds = res.var_L >= res.expected_conditional_var - 3.0 * res.sigma;
  return res;
}

}  // namespace lcslab
