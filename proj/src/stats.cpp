#include "lcslab/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <limits>
#include <numeric>
#include <vector>

#include "lcslab/error.hpp"

namespace lcslab {

double sample_mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(xs.size() - 1);
}

std::pair<double, double> variance_ci(double variance, std::uint64_t samples, double level) {
  if (samples < 2) throw LabError(ErrorKind::InvalidParams, "variance interval needs at least two samples");
  const double dof = static_cast<double>(samples - 1);
  const boost::math::chi_squared dist(dof);
  const double alpha = 1.0 - level;
  const double upper_q = boost::math::quantile(dist, 1.0 - alpha / 2.0);
  const double lower_q = boost::math::quantile(dist, alpha / 2.0);
  return {dof * variance / upper_q, dof * variance / lower_q};
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probs,
                               double min_expected) {
  if (observed.size() != probs.size()) throw LabError(ErrorKind::MisalignedInput, "observed/probs size mismatch");
  const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  if (total <= 0.0) throw LabError(ErrorKind::InvalidParams, "no observations");

  std::vector<double> obs, expct;
  double pooled_obs = 0.0, pooled_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = probs[i] * total;
    if (e < min_expected) {
      pooled_obs += static_cast<double>(observed[i]);
      pooled_exp += e;
    } else {
      obs.push_back(static_cast<double>(observed[i]));
      expct.push_back(e);
    }
  }
  if (pooled_exp > 0.0 || pooled_obs > 0.0) {
    if (pooled_exp < min_expected && !expct.empty()) {
      // still too small on its own: fold into the smallest regular cell
      const auto k = static_cast<std::size_t>(std::min_element(expct.begin(), expct.end()) - expct.begin());
      obs[k] += pooled_obs;
      expct[k] += pooled_exp;
    } else {
      obs.push_back(pooled_obs);
      expct.push_back(pooled_exp);
    }
  }

  ChiSquareResult res;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (expct[i] <= 0.0) {
      if (obs[i] > 0.0) {
        res.statistic = std::numeric_limits<double>::infinity();
        res.dof = static_cast<int>(obs.size()) - 1;
        res.p_value = 0.0;
        return res;
      }
      continue;
    }
    res.statistic += (obs[i] - expct[i]) * (obs[i] - expct[i]) / expct[i];
  }
  res.dof = static_cast<int>(obs.size()) - 1;
  if (res.dof < 1) {
    res.p_value = 1.0;
    return res;
  }
  const boost::math::chi_squared dist(res.dof);
  res.p_value = boost::math::cdf(boost::math::complement(dist, res.statistic));
  return res;
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw LabError(ErrorKind::InvalidParams, "linear fit needs at least two aligned points");
  const double mx = sample_mean(xs);
  const double my = sample_mean(ys);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw LabError(ErrorKind::InvalidParams, "linear fit needs distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace lcslab
