#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavjam/analytic_multi.hpp"
#include "uavjam/channel.hpp"
#include "uavjam/quadrature.hpp"

namespace uavjam {

/// Evenly spaced grid over [lo, hi]; a single point requires lo == hi.
struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int points = 1;

  double step() const { return points > 1 ? (hi - lo) / (points - 1) : 0.0; }
  double at(int i) const { return points > 1 ? lo + i * step() : lo; }
};

enum class PlacementObjective : std::uint8_t { kSingle, kMulti };

struct PlacementSearchSpec {
  GridAxis d_tu{0.0, 680.0, 41};
  GridAxis z_u{0.0, 500.0, 26};
  int refine_iterations = 5;
  PlacementObjective objective = PlacementObjective::kSingle;
  unsigned threads = 1;
};

/// Search box d_tu in [0, 2 ell_r] with 41 points, z_u in [0, 500] with 26.
PlacementSearchSpec default_search(const NetworkConfig& cfg);

std::vector<Violation> check(const PlacementSearchSpec& spec);

struct OptimalPlacement {
  double d_tu_star = 0.0;
  double z_u_star = 0.0;
  double p_se_star = 0.0;
  std::uint64_t evaluations = 0;
};

/// Raised when the objective is non-finite or fails at some probe.
class ObjectiveError : public std::runtime_error {
 public:
  ObjectiveError(double d_tu, double z_u, const std::string& what);
  double d_tu() const { return d_tu_; }
  double z_u() const { return z_u_; }

 private:
  double d_tu_;
  double z_u_;
};

/// Best (d_tu, z_u) for the single jammer on the Rx-Tx line (theta = pi).
/// Coarse grid scan, then refine_iterations rounds of step halving around
/// the incumbent. Ties go to the lowest d_tu, then the lowest z_u.
OptimalPlacement optimize_placement(const PlacementSearchSpec& spec,
                                    const NetworkConfig& cfg,
                                    const EnvironmentParams& env,
                                    const QuadratureSettings& quad);

/// Best jammer-field height; the d_tu axis is ignored and d_tu_star is 0.
/// settings.z_u is overridden by the search.
OptimalPlacement optimize_height_multi(const PlacementSearchSpec& spec,
                                       const MultiJammerSettings& settings,
                                       const NetworkConfig& cfg,
                                       const EnvironmentParams& env);

}  // namespace uavjam
