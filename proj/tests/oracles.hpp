#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library code they are used to check.

#include <cstdint>
#include <string>
#include <vector>

namespace lcslab::oracle {

/// Longest common subsequence by trying every subsequence of the shorter string.
std::size_t exhaustive_lcs(const std::string& x, const std::string& y);

/// Run lengths of a binary string.
std::vector<int> runs(const std::string& s);

/// P(R = r) for r in [0, l] from the renewal recursion u(k) = sum_b u(k-b)/3.
std::vector<long double> rest_distribution(int l, int n);

/// P((N_{l-1}, N_l, N_{l+1}) = (n1, n2, n3), R = r) as an exact ratio of
/// integers evaluated in long double. Requires n1 + n2 + n3 <= 20.
long double exact_joint_prob(int l, std::int64_t n1, std::int64_t n2, std::int64_t n3, std::int64_t r);

/// Every binary string that consists of exactly n1, n2, n3
/// blocks of lengths l-1, l, l+1 followed by a rest run of length r, found by
/// scanning all 2^n strings. Sorted.
std::vector<std::string> brute_force_xi(int l, int n1, int n2, int n3, int r);

/// Every outcome of one tilde step on the raw string s, whose last `rest`
/// symbols form the rest run: one run of length l-1 and one of length l+1 both
/// become length l. One entry per (short run, long run) choice.
std::vector<std::string> tilde_outcomes_raw(const std::string& s, int l, int rest);

}  // namespace lcslab::oracle
