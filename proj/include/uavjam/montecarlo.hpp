#pragma once

#include <cstdint>
#include <vector>

#include "uavjam/analytic_multi.hpp"
#include "uavjam/channel.hpp"
#include "uavjam/rng.hpp"

namespace uavjam {

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_realizations = 0;
  std::uint64_t successes = 0;
};

/// Bernoulli estimate from `successes` out of `n` i.i.d. trials.
MonteCarloEstimate bernoulli_estimate(std::uint64_t successes, std::uint64_t n);

/// How the jammer field of the multi-jammer simulation is shared.
///
/// kPerReceiver draws a fresh field around the Rx and around every
/// eavesdropper, which is the independence the analytic multi-jammer
/// expression is built on. kShared places one field that all receivers see;
/// their outcomes are then positively correlated and the analytic value is
/// only an approximation.
enum class JammerField : std::uint8_t { kPerReceiver, kShared };

/// Realization i draws exclusively from RandomStream(seed, i); the result is
/// therefore identical for any thread count.
struct MonteCarloSettings {
  std::uint64_t realizations = 200000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  JammerField field = JammerField::kPerReceiver;
};

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

struct LinkDraw {
  LinkEnvironment tag = LinkEnvironment::kNlos;
  double gain = 0.0;
};

/// Every random quantity of one realization, fully materialized. Receiver 0
/// is the Rx, receivers 1..n are the eavesdroppers in `eve_positions` order.
/// `jamming_links[k][j]` is the link from jammer j to receiver k.
struct Realization {
  std::vector<PlanarPoint> eve_positions;
  std::vector<PlanarPoint> jammer_positions;
  double jammer_height = 0.0;
  std::vector<double> signal_gains;
  std::vector<std::vector<LinkDraw>> jamming_links;
};

/// Homogeneous PPP on the disk of `radius` centred at the origin.
std::vector<PlanarPoint> sample_ppp(double lambda, double radius,
                                    RandomStream& rng);

/// Draws the environment (LoS with probability los_probability) and the
/// fading gain of one jammer-to-ground link.
LinkDraw draw_jamming_link(double d, double z_u, const EnvironmentParams& env,
                           RandomStream& rng);

/// Rx location (on the +x axis) and single-jammer location for a placement.
PlanarPoint receiver_position(const NetworkConfig& cfg);
PlanarPoint jammer_position(const JammerPlacement& placement);

Realization sample_realization(const JammerPlacement& placement,
                               const NetworkConfig& cfg,
                               const EnvironmentParams& env, RandomStream& rng);
Realization sample_realization_multi(const MultiJammerSettings& settings,
                                     const NetworkConfig& cfg,
                                     const EnvironmentParams& env,
                                     RandomStream& rng);

/// gamma_r > gamma_t and max_e gamma_e < gamma_t' for a materialized
/// realization.
bool secrecy_event(const Realization& realization, const NetworkConfig& cfg,
                   const EnvironmentParams& env);

/// Secrecy probability with one jammer. Jamming links are drawn lazily: an
/// eavesdropper whose unjammed SINR is already below threshold never has its
/// jamming link sampled, and a realization stops at the first decisive link.
MonteCarloEstimate simulate_secrecy(const JammerPlacement& placement,
                                    const NetworkConfig& cfg,
                                    const EnvironmentParams& env,
                                    const MonteCarloSettings& mc);

/// Same target as simulate_secrecy, scored on fully materialized
/// realizations. Slower; kept as a cross-check of the lazy path.
MonteCarloEstimate simulate_secrecy_materialized(
    const JammerPlacement& placement, const NetworkConfig& cfg,
    const EnvironmentParams& env, const MonteCarloSettings& mc);

/// Secrecy probability under a PPP jammer field at common height, with the
/// field shared according to `mc.field`.
MonteCarloEstimate simulate_secrecy_multi(const MultiJammerSettings& settings,
                                          const NetworkConfig& cfg,
                                          const EnvironmentParams& env,
                                          const MonteCarloSettings& mc);

/// Materialized cross-check; always uses one shared field.
MonteCarloEstimate simulate_secrecy_multi_materialized(
    const MultiJammerSettings& settings, const NetworkConfig& cfg,
    const EnvironmentParams& env, const MonteCarloSettings& mc);

}  // namespace uavjam
