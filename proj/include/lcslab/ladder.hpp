#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lcslab/block_model.hpp"
#include "lcslab/domain.hpp"
#include "lcslab/modification.hpp"

namespace lcslab {

enum class Parity { Even, Odd };
enum class Termination { DomainExit, NoModifiableBlocks };

std::string_view to_string(Parity p);
std::string_view to_string(Termination t);

struct Rung {
  std::int64_t z = 0;
  std::int64_t r = 0;
  std::int64_t lcs = 0;
  Parity parity = Parity::Even;
  BlockString string;
};

// Coupled strings X_(t,z,r) on the grid z0, z0+2, z0+4, ... . Even rungs come
// from a conditional draw at z0 followed by tilde steps; odd rungs from a half
// step on the z0 string followed by tilde steps. The half step moves one
// symbol in or out of the rest, so odd rungs carry r -+ 1 (see Rung::r).
struct LcsLadder {
  ModelParams params;
  std::int64_t t = 0;
  std::int64_t r = 0;
  Seed seed = 0;
  std::vector<Rung> rungs;  // sorted by z, consecutive z differ by 2
  std::vector<ModStep> even_trace;
  std::vector<ModStep> odd_trace;
  Termination even_end = Termination::DomainExit;
  Termination odd_end = Termination::DomainExit;

  std::vector<std::int64_t> z_values() const;
  std::vector<double> lcs_values() const;
  /// LCS values of one parity class in z order (consecutive entries are one tilde apart).
  std::vector<double> values(Parity parity) const;
  std::vector<const Rung*> rungs_of(Parity parity) const;
};

/// Smallest z in the domain's Z-interval with admissible counts for (t, r).
std::optional<std::int64_t> leftmost_z(const ModelParams& params, std::int64_t t, std::int64_t r,
                                       const DomainD& domain);

/// Throws NoAdmissibleZ when no z in the domain works for (t, r), and
/// InvalidParams when |y| != n.
LcsLadder build_ladder(const ModelParams& params, std::int64_t t, std::int64_t r, std::string_view y,
                       const DomainD& domain, Seed seed);

inline double default_c2(double epsilon) { return 80.0 / (epsilon * epsilon); }

struct SlopeEvent {
  double epsilon = 0.0;
  double c2 = 0.0;
  bool holds = true;
  std::optional<std::pair<std::int64_t, std::int64_t>> violating_pair;
};

/// Checks L(z2) - L(z1) >= (epsilon/8)(z2 - z1) for every pair with
/// z2 - z1 >= c2 * ln(n); `z` must be increasing. Reports the first violation in
/// (z1, z2) lexicographic order.
SlopeEvent slope_event_check(std::span<const std::int64_t> z, std::span<const double> values, int n,
                             double epsilon, double c2);
SlopeEvent slope_event_check(const LcsLadder& ladder, double epsilon, double c2);

/// Repaired values L*: equal to `values` while every drift so far is >= epsilon,
/// then previous + epsilon. Needs one drift per +4 step (values.size() - 1).
std::vector<double> repair_ladder(std::span<const double> values, std::span<const DriftEstimate> drifts,
                                  double epsilon);
std::vector<double> repair_ladder(const LcsLadder& ladder, Parity parity, std::span<const DriftEstimate> drifts,
                                  double epsilon);

/// Drift of every rung of one parity class except the last: exact when
/// n1 * n3 <= cap, otherwise sampled with k draws.
std::vector<DriftEstimate> ladder_drifts(const LcsLadder& ladder, Parity parity, std::string_view y,
                                         std::uint64_t cap, std::uint64_t k, Seed seed);

struct LadderDiagnostics {
  std::vector<double> e_values;
  std::vector<double> martingale_residuals;  // increment minus e_i
  std::int64_t window = 0;                   // z2 - z1 = 4m
  double azuma_bound = 0.0;                  // increments bounded by 1
  double azuma_bound_lipschitz = 0.0;        // increments bounded by 2
  double tau = 0.0;                          // epsilon^2 c2 / 32
  double max_abs_increment = 0.0;
};

/// With drifts (one per step) e_i is the drift while all drift events so far
/// held and epsilon afterwards; without drifts e_i is the mean increment.
LadderDiagnostics martingale_diagnostics(std::span<const double> repaired, double epsilon, double c2, int n,
                                         std::span<const DriftEstimate> drifts = {});

}  // namespace lcslab
