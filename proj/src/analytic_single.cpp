#include "uavjam/analytic_single.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace uavjam {

double checked_probability(double value, const char* what) {
  constexpr double kSlack = 1e-9;
  if (!(value >= -kSlack && value <= 1.0 + kSlack)) {
    throw std::domain_error(std::string(what) + " outside [0,1]: " +
                            std::to_string(value));
  }
  return std::clamp(value, 0.0, 1.0);
}

double p_success_conditional(double d, double z_u, LinkEnvironment tag,
                             double rho, double gamma, const NetworkConfig& cfg,
                             const EnvironmentParams& env) {
  if (std::isinf(rho)) return 1.0;
  const double noise_factor = std::exp(-gamma * cfg.noise / rho);
  const double tau = jamming_scale(d, z_u, tag, cfg.p_jam, env);
  if (std::isinf(tau)) return 0.0;
  const double x = gamma * tau / rho;
  if (tag == LinkEnvironment::kNlos) return noise_factor / (1.0 + x);
  const double m = static_cast<double>(env.m_los);
  return noise_factor * std::pow(m / (x + m), m);
}

double interference_outage(double d, double z_u, LinkEnvironment tag,
                           double rho, double gamma, double p_jam,
                           const EnvironmentParams& env) {
  if (std::isinf(rho)) return 0.0;
  const double tau = jamming_scale(d, z_u, tag, p_jam, env);
  if (std::isinf(tau)) return 1.0;
  const double x = gamma * tau / rho;
  if (tag == LinkEnvironment::kNlos) return x / (1.0 + x);
  const double m = static_cast<double>(env.m_los);
  return -std::expm1(-m * std::log1p(x / m));
}

double p_success_at(double d, double z_u, double rho, double gamma,
                    const NetworkConfig& cfg, const EnvironmentParams& env) {
  const double p_los = los_probability(d, z_u, env);
  const double nlos = p_success_conditional(d, z_u, LinkEnvironment::kNlos, rho,
                                            gamma, cfg, env);
  if (p_los == 0.0) return nlos;
  const double los = p_success_conditional(d, z_u, LinkEnvironment::kLos, rho,
                                           gamma, cfg, env);
  // written so that equal branches give that branch exactly
  return nlos + p_los * (los - nlos);
}

double p_success(const JammerPlacement& placement, const NetworkConfig& cfg,
                 const EnvironmentParams& env) {
  const double d_r =
      horizontal_distance(placement.d_tu, cfg.ell_r, placement.theta_r);
  const double rho_r = signal_scale(cfg.ell_r, cfg, env);
  return checked_probability(
      p_success_at(d_r, placement.z_u, rho_r, cfg.gamma_t, cfg, env), "p_s");
}

QuadratureResult eavesdrop_integral(const JammerPlacement& placement,
                                    const NetworkConfig& cfg,
                                    const EnvironmentParams& env,
                                    const QuadratureSettings& quad) {
  const double radius = quad.radial_truncation;
  const double d_tu = placement.d_tu;
  const double z_u = placement.z_u;
  // Distance beyond which the noise alone defeats an unjammed eavesdropper.
  const double noise_range = std::pow(
      cfg.p_tx / (cfg.gamma_t_prime * cfg.noise), 1.0 / g2g_exponent(cfg, env));

  auto radial = [&](double ell, double cos_theta) {
    if (ell == 0.0) return 0.0;
    const double sq = d_tu * d_tu + ell * ell - 2.0 * d_tu * ell * cos_theta;
    const double d = std::sqrt(std::max(sq, 0.0));
    const double rho = signal_scale(ell, cfg, env);
    return p_success_at(d, z_u, rho, cfg.gamma_t_prime, cfg, env) * ell;
  };

  int evaluations = 0;
  double inner_error = 0.0;
  auto angular = [&](double theta) {
    const double c = std::cos(theta);
    std::vector<double> interior = {1.0, 10.0, 100.0, 1000.0, d_tu, d_tu * c};
    for (double k : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
      interior.push_back(k * noise_range);
    }
    const auto pts = make_partition(0.0, radius, std::move(interior));
    auto r = integrate([&](double ell) { return radial(ell, c); }, pts,
                       quad.rel_tol * 0.1, quad.abs_tol, quad.max_subdivisions);
    evaluations += r.evaluations;
    inner_error = std::max(inner_error, r.error);
    return r.value;
  };

  constexpr double pi = std::numbers::pi;
  const auto theta_pts = make_partition(
      0.0, pi, {pi / 64.0, pi / 16.0, pi / 8.0, pi / 4.0, pi / 2.0});
  // Symmetric about the Tx-jammer axis: integrate [0, pi] and double.
  auto outer = integrate(angular, theta_pts, quad.rel_tol, quad.abs_tol,
                         quad.max_subdivisions);
  QuadratureResult out{2.0 * outer.value, 2.0 * (outer.error + pi * inner_error),
                       evaluations + outer.evaluations};

  const double edge =
      std::max(radial(radius, 1.0), radial(radius, -1.0)) * radius;
  if (2.0 * pi * edge > 1e-12 * out.value) {
    throw QuadratureError(
        "eavesdrop_integral: integrand not negligible at radial_truncation",
        out.value, 2.0 * pi * edge);
  }
  return out;
}

double p_eavesdrop(const JammerPlacement& placement, const NetworkConfig& cfg,
                   const EnvironmentParams& env,
                   const QuadratureSettings& quad) {
  if (cfg.lambda_e == 0.0) return 0.0;
  const double f = eavesdrop_integral(placement, cfg, env, quad).value;
  return checked_probability(-std::expm1(-cfg.lambda_e * f), "p_e");
}

SecrecyResult p_secrecy(const JammerPlacement& placement,
                        const NetworkConfig& cfg, const EnvironmentParams& env,
                        const QuadratureSettings& quad) {
  validate(placement);
  validate(cfg);
  validate(env);
  SecrecyResult out;
  out.p_s = p_success(placement, cfg, env);
  out.p_e = p_eavesdrop(placement, cfg, env, quad);
  out.p_se = out.p_s * (1.0 - out.p_e);
  return out;
}

double p_secrecy_asymptotic(const JammerPlacement& placement,
                            const NetworkConfig& cfg,
                            const EnvironmentParams& env) {
  const double alpha = env.alpha_nlos;
  const double beta = cfg.gamma_t_prime * cfg.noise / cfg.p_tx;
  const double exponent =
      2.0 * cfg.lambda_e * std::numbers::pi * cfg.p_tx *
      std::tgamma(2.0 / alpha) /
      ((cfg.gamma_t_prime * cfg.p_jam + cfg.p_tx) * alpha *
       std::pow(beta, 2.0 / alpha));
  return checked_probability(p_success(placement, cfg, env) * std::exp(-exponent),
                             "p_se asymptotic");
}

}  // namespace uavjam
