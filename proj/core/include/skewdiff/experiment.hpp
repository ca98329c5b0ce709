#pragma once

#include <cstddef>
#include <cstdint>

#include "skewdiff/stats.hpp"

namespace skewdiff {

/// Monte Carlo setup shared by the experiment drivers. Path p draws its noise
/// from path_stream(seed, p, lane), so results do not depend on `workers`.
struct McConfig {
  double horizon = 1.0;
  std::size_t steps = 10000;
  std::size_t paths = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::size_t mollifier_n = 256;
};

/// Default relative allowance for a discretized scheme standing in for its
/// limit process.
inline constexpr double kSchemeAllowance = 0.05;

/// Estimate compared with an exact value: passes iff
/// |mean - target| <= half_width + allowance * |target|.
struct TargetCheck {
  McSummary estimate;
  double target = 0.0;
  double allowance = kSchemeAllowance;
  bool pass = false;
};

TargetCheck check_target(const McSummary& estimate, double target,
                         double allowance = kSchemeAllowance);

/// Estimate compared with an upper bound: fails only when the lower CI edge
/// exceeds the bound.
struct BoundCheck {
  McSummary estimate;
  double bound = 0.0;
  bool pass = false;
};

BoundCheck check_bound(const McSummary& estimate, double bound);

}  // namespace skewdiff
