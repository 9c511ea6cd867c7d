#include "lcslab/ladder.hpp"

#include <algorithm>
#include <cmath>

#include "lcslab/error.hpp"
#include "lcslab/lcs.hpp"

namespace lcslab {

std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

std::string_view to_string(Termination t) {
  return t == Termination::DomainExit ? "domain_exit" : "no_modifiable_blocks";
}

std::vector<std::int64_t> LcsLadder::z_values() const {
  std::vector<std::int64_t> out;
  out.reserve(rungs.size());
  for (const auto& rung : rungs) out.push_back(rung.z);
  return out;
}

std::vector<double> LcsLadder::lcs_values() const {
  std::vector<double> out;
  out.reserve(rungs.size());
  for (const auto& rung : rungs) out.push_back(static_cast<double>(rung.lcs));
  return out;
}

std::vector<double> LcsLadder::values(Parity parity) const {
  std::vector<double> out;
  for (const auto& rung : rungs)
    if (rung.parity == parity) out.push_back(static_cast<double>(rung.lcs));
  return out;
}

std::vector<const Rung*> LcsLadder::rungs_of(Parity parity) const {
  std::vector<const Rung*> out;
  for (const auto& rung : rungs)
    if (rung.parity == parity) out.push_back(&rung);
  return out;
}

std::optional<std::int64_t> leftmost_z(const ModelParams& params, std::int64_t t, std::int64_t r,
                                       const DomainD& domain) {
  for (std::int64_t z = domain.z_lo; z <= domain.z_hi; ++z) {
    if (try_counts_from_tzr(params, TzrStats{t, z, r})) return z;
  }
  return std::nullopt;
}

namespace {

// Applies tilde steps until the next z would leave the domain or no pair of
// modifiable blocks is left.
Termination climb(BlockString s, std::int64_t z, std::int64_t r, Parity parity, std::int64_t z_hi, Rng& rng,
                  std::vector<Rung>& rungs, std::vector<ModStep>& trace) {
  for (;;) {
    if (z + 4 > z_hi) return Termination::DomainExit;
    Modified m;
    try {
      m = tilde(s, rng);
    } catch (const LabError& e) {
      if (e.kind() != ErrorKind::NoModifiableBlocks) throw;
      return Termination::NoModifiableBlocks;
    }
    m.step.step = trace.size();
    trace.push_back(m.step);
    s = std::move(m.string);
    z += 4;
    rungs.push_back(Rung{z, r, 0, parity, s});
  }
}

}  // namespace

LcsLadder build_ladder(const ModelParams& params, std::int64_t t, std::int64_t r, std::string_view y,
                       const DomainD& domain, Seed seed) {
  params.validate();
  if (static_cast<std::int64_t>(y.size()) != params.n)
    throw LabError(ErrorKind::InvalidParams, "y must have length n");
  const auto z0 = leftmost_z(params, t, r, domain);
  if (!z0)
    throw LabError(ErrorKind::NoAdmissibleZ,
                   "no admissible z in the domain for t=" + std::to_string(t) + ", r=" + std::to_string(r));

  LcsLadder ladder;
  ladder.params = params;
  ladder.t = t;
  ladder.r = r;
  ladder.seed = seed;

  const BlockString base = sample_conditional(params, TzrStats{t, *z0, r}, derive_seed(seed, "ladder.conditional"));
  std::vector<Rung> rungs;
  rungs.push_back(Rung{*z0, r, 0, Parity::Even, base});

  Rng even_rng(derive_seed(seed, "ladder.even"));
  ladder.even_end = climb(base, *z0, r, Parity::Even, domain.z_hi, even_rng, rungs, ladder.even_trace);

  if (*z0 + 2 > domain.z_hi) {
    ladder.odd_end = Termination::DomainExit;
  } else {
    Rng odd_rng(derive_seed(seed, "ladder.odd"));
    std::optional<Modified> half;
    try {
      half = half_tilde(base, odd_rng);
    } catch (const LabError& e) {
      if (e.kind() != ErrorKind::NoModifiableBlocks) throw;
      ladder.odd_end = Termination::NoModifiableBlocks;
    }
    if (half) {
      half->step.step = 0;
      ladder.odd_trace.push_back(half->step);
      const std::int64_t odd_r = half->string.rest;
      rungs.push_back(Rung{*z0 + 2, odd_r, 0, Parity::Odd, half->string});
      ladder.odd_end =
          climb(half->string, *z0 + 2, odd_r, Parity::Odd, domain.z_hi, odd_rng, rungs, ladder.odd_trace);
    }
  }

  std::sort(rungs.begin(), rungs.end(), [](const Rung& a, const Rung& b) { return a.z < b.z; });
  // Keep the contiguous prefix of the merged grid.
  std::size_t keep = 1;
  while (keep < rungs.size() && rungs[keep].z == rungs[keep - 1].z + 2) ++keep;
  rungs.resize(keep);

  const PreparedLcs prepared(y);
  for (auto& rung : rungs) rung.lcs = static_cast<std::int64_t>(prepared.against(rung.string.symbols()));
  ladder.rungs = std::move(rungs);
  return ladder;
}

SlopeEvent slope_event_check(std::span<const std::int64_t> z, std::span<const double> values, int n,
                             double epsilon, double c2) {
  if (!(epsilon > 0.0) || !(c2 > 0.0)) throw LabError(ErrorKind::InvalidParams, "epsilon and c2 must be > 0");
  if (z.size() != values.size()) throw LabError(ErrorKind::MisalignedInput, "z and values differ in length");
  if (n < 1) throw LabError(ErrorKind::InvalidParams, "n must be >= 1");
  SlopeEvent ev;
  ev.epsilon = epsilon;
  ev.c2 = c2;
  const double scale = c2 * std::log(static_cast<double>(n));
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double gap = static_cast<double>(z[j] - z[i]);
      if (gap < scale) continue;
      if (values[j] - values[i] < epsilon / 8.0 * gap) {
        ev.holds = false;
        ev.violating_pair = std::make_pair(z[i], z[j]);
        return ev;
      }
    }
  }
  return ev;
}

SlopeEvent slope_event_check(const LcsLadder& ladder, double epsilon, double c2) {
  const auto z = ladder.z_values();
  const auto v = ladder.lcs_values();
  return slope_event_check(z, v, ladder.params.n, epsilon, c2);
}

std::vector<double> repair_ladder(std::span<const double> values, std::span<const DriftEstimate> drifts,
                                  double epsilon) {
  if (values.empty()) {
    if (!drifts.empty()) throw LabError(ErrorKind::MisalignedInput, "drifts given for an empty ladder");
    return {};
  }
  if (drifts.size() != values.size() - 1)
    throw LabError(ErrorKind::MisalignedInput, "expected " + std::to_string(values.size() - 1) + " drifts, got " +
                                                   std::to_string(drifts.size()));
  std::vector<double> out(values.size());
  out[0] = values[0];
  bool held = true;
  for (std::size_t i = 0; i < drifts.size(); ++i) {
    held = held && drifts[i].mean >= epsilon;
    out[i + 1] = held ? values[i + 1] : out[i] + epsilon;
  }
  return out;
}

std::vector<double> repair_ladder(const LcsLadder& ladder, Parity parity, std::span<const DriftEstimate> drifts,
                                  double epsilon) {
  return repair_ladder(ladder.values(parity), drifts, epsilon);
}

std::vector<DriftEstimate> ladder_drifts(const LcsLadder& ladder, Parity parity, std::string_view y,
                                         std::uint64_t cap, std::uint64_t k, Seed seed) {
  const auto rungs = ladder.rungs_of(parity);
  std::vector<DriftEstimate> out;
  for (std::size_t i = 0; i + 1 < rungs.size(); ++i) {
    const BlockCounts c = rungs[i]->string.counts();
    const auto outcomes = static_cast<std::uint64_t>(c.n1) * static_cast<std::uint64_t>(c.n3);
    if (outcomes <= cap) out.push_back(drift_exact(rungs[i]->string, y, cap));
    else out.push_back(drift_sampled(rungs[i]->string, y, k, derive_seed(seed, "ladder.drift", i)));
  }
  return out;
}

LadderDiagnostics martingale_diagnostics(std::span<const double> repaired, double epsilon, double c2, int n,
                                         std::span<const DriftEstimate> drifts) {
  if (repaired.empty()) throw LabError(ErrorKind::InvalidParams, "empty repaired sequence");
  if (n < 1) throw LabError(ErrorKind::InvalidParams, "n must be >= 1");
  const std::size_t m = repaired.size() - 1;
  if (!drifts.empty() && drifts.size() != m)
    throw LabError(ErrorKind::MisalignedInput, "expected " + std::to_string(m) + " drifts");

  LadderDiagnostics d;
  std::vector<double> increments(m);
  for (std::size_t i = 0; i < m; ++i) increments[i] = repaired[i + 1] - repaired[i];

  d.e_values.resize(m);
  if (!drifts.empty()) {
    bool held = true;
    for (std::size_t i = 0; i < m; ++i) {
      held = held && drifts[i].mean >= epsilon;
      d.e_values[i] = held ? drifts[i].mean : epsilon;
    }
  } else if (m > 0) {
    double mean = 0.0;
    for (double inc : increments) mean += inc;
    mean /= static_cast<double>(m);
    std::fill(d.e_values.begin(), d.e_values.end(), mean);
  }

  d.martingale_residuals.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    d.martingale_residuals[i] = increments[i] - d.e_values[i];
    d.max_abs_increment = std::max(d.max_abs_increment, std::abs(increments[i]));
  }
  d.window = 4 * static_cast<std::int64_t>(m);
  const double exponent = epsilon * epsilon / 32.0 * static_cast<double>(d.window);
  d.azuma_bound = 2.0 * std::exp(-exponent);
  d.azuma_bound_lipschitz = 2.0 * std::exp(-exponent / 4.0);
  d.tau = epsilon * epsilon * c2 / 32.0;
  return d;
}

}  // namespace lcslab
