#pragma once

#include "uavjam/analytic_single.hpp"
#include "uavjam/channel.hpp"
#include "uavjam/quadrature.hpp"

namespace uavjam {

/// A PPP field of jammers with density lambda_u, all hovering at z_u.
struct MultiJammerSettings {
  double lambda_u = 7e-6;
  double z_u = 100.0;
  QuadratureSettings quad{};
};

std::vector<Violation> check(const MultiJammerSettings& settings);

/// PGFL exponent of the jammer field seen by a ground receiver with signal
/// scale `rho` and threshold `gamma` (interference-limited):
///   2 pi lambda_u int_0^inf sum_e p_e(v) (1 - p_hat^(e)(v)) v dv.
double jammer_field_exponent(double rho, double gamma, double lambda_u,
                             double z_u, const NetworkConfig& cfg,
                             const EnvironmentParams& env,
                             const QuadratureSettings& quad);

/// Secrecy probability under the jammer field, with its legitimate-link
/// factor as p_s and the eavesdropper factor as 1 - p_e.
SecrecyResult secrecy_multi(const MultiJammerSettings& settings,
                            const NetworkConfig& cfg,
                            const EnvironmentParams& env);

double p_secrecy_multi(const MultiJammerSettings& settings,
                       const NetworkConfig& cfg, const EnvironmentParams& env);

/// Small-height limit: every jamming link NLoS at horizontal distance only.
/// Requires alpha_nlos > 2. The remaining eavesdropper integral is
/// evaluated by quadrature.
SecrecyResult secrecy_multi_asymptotic(const MultiJammerSettings& settings,
                                       const NetworkConfig& cfg,
                                       const EnvironmentParams& env);

double p_secrecy_multi_asymptotic(const MultiJammerSettings& settings,
                                  const NetworkConfig& cfg,
                                  const EnvironmentParams& env);

/// Exact evaluation of the small-height limit for alpha_nlos == 4 via the
/// scaled complementary error function. Throws for any other exponent.
SecrecyResult secrecy_multi_closed_form(const MultiJammerSettings& settings,
                                        const NetworkConfig& cfg,
                                        const EnvironmentParams& env);

double p_secrecy_multi_closed_form(const MultiJammerSettings& settings,
                                   const NetworkConfig& cfg,
                                   const EnvironmentParams& env);

}  // namespace uavjam
