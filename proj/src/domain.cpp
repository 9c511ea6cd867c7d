#include "lcslab/domain.hpp"

#include <cmath>

#include "lcslab/error.hpp"

namespace lcslab {

namespace {
// Absorbs rounding noise so that e.g. 300 - 30 stays 270 after floor.
constexpr double kSlack = 1e-9;
}

DomainD make_domain(const ModelParams& params, double c) {
  params.validate();
  if (!(c > 0.0) || !std::isfinite(c)) throw LabError(ErrorKind::InvalidParams, "domain scale c must be > 0");
  const double n = params.n;
  const double half_width = c * std::sqrt(n);
  const double t_center = n / params.l;
  const double z_center = -n / (3.0 * params.l);
  DomainD d;
  d.c = c;
  d.t_lo = static_cast<std::int64_t>(std::floor(t_center - half_width + kSlack));
  d.t_hi = static_cast<std::int64_t>(std::ceil(t_center + half_width - kSlack));
  d.z_lo = static_cast<std::int64_t>(std::floor(z_center - half_width + kSlack));
  d.z_hi = static_cast<std::int64_t>(std::ceil(z_center + half_width - kSlack));
  return d;
}

}  // namespace lcslab
