#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "lcslab/io.hpp"
#include "lcslab/lcs.hpp"
#include "lcslab/random.hpp"

namespace lcslab {

// Outcome of one verification suite; `detail` holds the per-case record
// written to the JSON report.
struct CheckReport {
  std::string name;
  bool pass = false;
  Json detail;
};

/// Exact push-forward of the uniform law on xi(t,z,0) under tilde, compared
/// with the uniform law on xi(t,z+4,0), for every count vector with
/// n1 + n2 + n3 <= max_t and n1, n3 >= 1. Total variation is kept as an
/// integer numerator over a common denominator.
CheckReport verify_possz(int l, int max_t);

/// Round trip counts -> (t,z,r) -> counts for n1 + n2 + n3 <= max_total and
/// r in [0, l], for each l, plus the worked case (5,-1,1) -> (2,2,1) at l=3, n=15.
CheckReport verify_linear_system(std::span<const int> ls, int max_total);

/// P(R = r) from the renewal recursion over block lengths.
std::vector<double> rest_law(int l, int n);

struct MultinomialOptions {
  int l = 3;
  int n = 24;
  std::uint64_t samples = 10'000;  // accepted draws per run
  int runs = 20;
  int min_passing = 19;
  double alpha = 0.001;
  int exact_n_max = 40;  // exact sums checked for every n up to this
  double exact_tol = 1e-9;
};

/// Chi-square of block counts of simulated strings conditioned on R = r
/// (r cycles with the run index) against the exact law, plus the exact
/// identity sum_{t,z} P(t,z,r) = P(R = r).
CheckReport verify_multinomial(const MultinomialOptions& opt, Seed seed);

/// Reference and bit-parallel engines on `pairs` seeded pairs of length n;
/// even indices are uniform bits, odd indices block strings with parameter l.
CheckReport verify_engines(int l, int n, std::uint64_t pairs, Seed seed);

/// Identity, staircase and vacuous fixtures for the variance lemma.
CheckReport verify_bonetto(Seed seed);

/// Empirical tails of fair +-1 means against 2 exp(-delta^2 n / 2) for each delta.
CheckReport verify_hoeffding(std::span<const double> deltas, std::uint64_t n, std::uint64_t reps, Seed seed);

}  // namespace lcslab
