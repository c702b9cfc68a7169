#pragma once

#include "uavjam/channel.hpp"
#include "uavjam/quadrature.hpp"

namespace uavjam {

/// Legitimate-link success, eavesdropping and secrecy probabilities.
/// p_se == p_s * (1 - p_e).
struct SecrecyResult {
  double p_s = 0.0;
  double p_e = 0.0;
  double p_se = 0.0;
};

/// P[h_t * rho / (h_u * tau + noise) > gamma] when the jamming link is in
/// environment `tag`, with h_t ~ Exp(1) and h_u distributed per `tag`.
/// `d` is the jammer's horizontal distance to the receiver. rho == inf (the
/// receiver sits on the Tx) gives 1.
double p_success_conditional(double d, double z_u, LinkEnvironment tag,
                             double rho, double gamma, const NetworkConfig& cfg,
                             const EnvironmentParams& env);

/// 1 - P[success] of the interference-limited link (noise = 0), computed in
/// complement form so it stays accurate when the jammer is negligible.
double interference_outage(double d, double z_u, LinkEnvironment tag,
                           double rho, double gamma, double p_jam,
                           const EnvironmentParams& env);

/// LoS/NLoS mixture of p_success_conditional at horizontal jammer distance d.
double p_success_at(double d, double z_u, double rho, double gamma,
                    const NetworkConfig& cfg, const EnvironmentParams& env);

/// Legitimate link success probability P[gamma_r > gamma_t].
double p_success(const JammerPlacement& placement, const NetworkConfig& cfg,
                 const EnvironmentParams& env);

/// Integral of the single-eavesdropper success probability over the plane,
///   F = int_0^{2pi} int_0^R p_{s,e}(l, theta) l dl dtheta,
/// so that p_e = 1 - exp(-lambda_e F). Independent of lambda_e and theta_r.
QuadratureResult eavesdrop_integral(const JammerPlacement& placement,
                                    const NetworkConfig& cfg,
                                    const EnvironmentParams& env,
                                    const QuadratureSettings& quad);

/// P[max_e gamma_e > gamma_t'] for a PPP of eavesdroppers.
double p_eavesdrop(const JammerPlacement& placement, const NetworkConfig& cfg,
                   const EnvironmentParams& env,
                   const QuadratureSettings& quad);

SecrecyResult p_secrecy(const JammerPlacement& placement,
                        const NetworkConfig& cfg, const EnvironmentParams& env,
                        const QuadratureSettings& quad);

/// Closed-form approximation for a jammer close to the Tx and near the
/// ground: every jamming link NLoS and the jammer-eve distance equal to the
/// Tx-eve distance. Assumes the ground links use alpha_nlos.
double p_secrecy_asymptotic(const JammerPlacement& placement,
                            const NetworkConfig& cfg,
                            const EnvironmentParams& env);

/// Returns `value` clamped to [0, 1] if it lies within 1e-9 of the range;
/// throws std::domain_error otherwise.
double checked_probability(double value, const char* what);

}  // namespace uavjam
