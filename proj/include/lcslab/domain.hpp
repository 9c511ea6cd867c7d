#pragma once

#include <cstdint>

#include "lcslab/block_model.hpp"

namespace lcslab {

// Typical region of (T, Z): [n/l -+ c*sqrt(n)] x [-n/(3l) -+ c*sqrt(n)], with
// the real endpoints rounded outward to integers.
struct DomainD {
  double c = 0.0;
  std::int64_t t_lo = 0;
  std::int64_t t_hi = -1;
  std::int64_t z_lo = 0;
  std::int64_t z_hi = -1;

  bool contains(std::int64_t t, std::int64_t z) const { return t >= t_lo && t <= t_hi && z >= z_lo && z <= z_hi; }
  bool operator==(const DomainD&) const = default;
};

/// Throws InvalidParams unless c > 0.
DomainD make_domain(const ModelParams& params, double c);

}  // namespace lcslab
