#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace lcslab {

double sample_mean(std::span<const double> xs);
/// Unbiased (n - 1) sample variance; 0 for fewer than two values.
double sample_variance(std::span<const double> xs);

/// Two-sided confidence interval for a variance under approximate normality:
/// [(k-1)s^2 / chi2_{1-a/2}, (k-1)s^2 / chi2_{a/2}] with k samples.
std::pair<double, double> variance_ci(double variance, std::uint64_t samples, double level = 0.95);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit. Cells whose expected count is below
/// `min_expected` are pooled into one cell before testing; `probs` must sum to
/// (about) one.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                               double min_expected = 5.0);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares of ys on xs.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace lcslab
