#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavjam/rng.hpp"

namespace uavjam {

/// Propagation environment of the air-to-ground links.
///
/// The LoS probability constants (zeta, nu, mu) describe building height
/// spread, building density and built-up ratio. Defaults reproduce the
/// reference urban setting used throughout the project.
struct EnvironmentParams {
  double alpha_los = 2.5;
  double alpha_nlos = 3.5;
  int m_los = 2;
  double zeta = 15.0;
  double nu = 5e-4;
  double mu = 0.3;
};

/// Powers, thresholds and densities of one network scenario.
///
/// alpha_g2g is the path-loss exponent of the ground-to-ground Tx links; a
/// non-positive value means "use alpha_nlos". lambda_u is the jammer-field
/// density used by scenarios that model a field of jammers.
struct NetworkConfig {
  double p_tx = 1e-8;
  double p_jam = 3e-10;
  double noise = 3e-19;
  double gamma_t = 3.0;
  double gamma_t_prime = 2.5;
  double ell_r = 340.0;
  double lambda_e = 5e-7;
  double lambda_u = 7e-6;
  double region_radius = 1e4;
  double alpha_g2g = 0.0;
};

/// Jammer position relative to the Tx: horizontal offset, height, and the
/// angle between the Tx-Rx axis and the Tx-jammer axis.
struct JammerPlacement {
  double d_tu = 0.0;
  double z_u = 0.0;
  double theta_r = 3.141592653589793;
};

enum class LinkEnvironment : std::uint8_t { kLos, kNlos };

/// One violated invariant: the offending field and the rule it breaks.
struct Violation {
  std::string field;
  std::string rule;
};

std::vector<Violation> check(const EnvironmentParams& env);
std::vector<Violation> check(const NetworkConfig& cfg);
std::vector<Violation> check(const JammerPlacement& placement);

/// Throws std::invalid_argument listing every violation, if any.
void validate(const EnvironmentParams& env);
void validate(const NetworkConfig& cfg);
void validate(const JammerPlacement& placement);

double g2g_exponent(const NetworkConfig& cfg, const EnvironmentParams& env);

/// Horizontal distance between the jammer and a ground node at distance
/// `ell_c` from the Tx, with `theta_c` the angle between the two axes.
double horizontal_distance(double d_tu, double ell_c, double theta_c);

/// Standard normal upper tail probability.
double q_function(double x);

/// Probability that the jammer-to-ground link at horizontal distance `d_c`
/// is line of sight for a jammer at height `z_u`.
///
/// At z_u == 0 the expression is 0/0; the small-height limit of the base is
/// zero, so a ground jammer is NLoS to every node with d_c > 0.
double los_probability(double d_c, double z_u, const EnvironmentParams& env);

/// -log of the LoS probability per meter of horizontal distance, so that
/// los_probability(d, z_u) == exp(-rate * d) for d > 0. Infinite at z_u == 0.
double los_decay_rate(double z_u, const EnvironmentParams& env);

/// Received Tx power at distance `ell` over a ground-to-ground link.
/// Infinite at ell == 0.
double signal_scale(double ell, const NetworkConfig& cfg,
                    const EnvironmentParams& env);

/// Received jammer power (before fading) over an air-to-ground link with
/// horizontal distance `d` and height `z_u` in environment `tag`.
double jamming_scale(double d, double z_u, LinkEnvironment tag, double p_jam,
                     const EnvironmentParams& env);

/// Small-scale power gain of a jammer-to-ground link: Gamma(m, 1/m) for
/// LoS (Nakagami-m amplitude), Exp(1) for NLoS. Unit mean in both cases.
double sample_fading(LinkEnvironment tag, int m_los, RandomStream& rng);

/// SINR h_t * rho / (h_u * tau + noise).
double sinr(double h_t, double h_u, double rho, double tau, double noise);

}  // namespace uavjam
