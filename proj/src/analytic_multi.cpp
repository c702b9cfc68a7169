#include "uavjam/analytic_multi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "uavjam/special.hpp"

namespace uavjam {
namespace {

constexpr double kPi = std::numbers::pi;

double noise_range(const NetworkConfig& cfg, double alpha) {
  return std::pow(cfg.p_tx / (cfg.gamma_t_prime * cfg.noise), 1.0 / alpha);
}

SecrecyResult compose(double legit_exponent, double eve_exponent) {
  SecrecyResult out;
  out.p_s = checked_probability(std::exp(-legit_exponent), "p_s");
  out.p_e = checked_probability(-std::expm1(-eve_exponent), "p_e");
  out.p_se = out.p_s * (1.0 - out.p_e);
  return out;
}

void validate_inputs(const MultiJammerSettings& settings,
                     const NetworkConfig& cfg, const EnvironmentParams& env) {
  validate(cfg);
  validate(env);
  const auto v = check(settings);
  if (!v.empty()) throw std::invalid_argument(v.front().field + ": " + v.front().rule);
}

}  // namespace

std::vector<Violation> check(const MultiJammerSettings& settings) {
  std::vector<Violation> out;
  if (!(std::isfinite(settings.lambda_u) && settings.lambda_u >= 0.0)) {
    out.push_back({"lambda_u", "lambda_u >= 0"});
  }
  if (!(std::isfinite(settings.z_u) && settings.z_u >= 0.0)) {
    out.push_back({"z_u", "z_u >= 0"});
  }
  for (auto& rule : check(settings.quad)) out.push_back({"quadrature", rule});
  return out;
}

double jammer_field_exponent(double rho, double gamma, double lambda_u,
                             double z_u, const NetworkConfig& cfg,
                             const EnvironmentParams& env,
                             const QuadratureSettings& quad) {
  if (lambda_u == 0.0 || cfg.p_jam == 0.0 || std::isinf(rho)) return 0.0;
  auto integrand = [&](double v) {
    const double p_los = los_probability(v, z_u, env);
    double outage = 0.0;
    if (p_los > 0.0) {
      outage += p_los * interference_outage(v, z_u, LinkEnvironment::kLos, rho,
                                            gamma, cfg.p_jam, env);
    }
    if (p_los < 1.0) {
      outage += (1.0 - p_los) * interference_outage(v, z_u,
                                                    LinkEnvironment::kNlos, rho,
                                                    gamma, cfg.p_jam, env);
    }
    return outage * v;
  };

  // Breakpoints at the radii where a jammer and the Tx deliver equal power,
  // and at the LoS decay length.
  std::vector<double> interior = {1.0, 10.0, 100.0, 1000.0, z_u};
  double reach = z_u;
  for (double alpha : {env.alpha_nlos, env.alpha_los}) {
    const double j = std::pow(gamma * cfg.p_jam / rho, 1.0 / alpha);
    const double v = std::sqrt(std::max(j * j - z_u * z_u, 0.0));
    reach = std::max(reach, v);
    for (double k : {0.25, 0.5, 1.0, 2.0, 4.0}) interior.push_back(k * v);
  }
  const double p1 = los_probability(1.0, z_u, env);
  if (p1 > 0.0 && p1 < 1.0) {
    const double decay = -1.0 / std::log(p1);
    for (double k : {1.0, 4.0, 16.0}) interior.push_back(k * decay);
  }
  const double head = std::max(quad.radial_truncation, 16.0 * reach);
  const auto pts = make_partition(0.0, head, std::move(interior));
  const auto r = integrate_to_infinity(integrand, pts, quad.rel_tol,
                                       quad.abs_tol, quad.max_subdivisions);
  return 2.0 * kPi * lambda_u * r.value;
}

SecrecyResult secrecy_multi(const MultiJammerSettings& settings,
                            const NetworkConfig& cfg,
                            const EnvironmentParams& env) {
  validate_inputs(settings, cfg, env);
  const auto& quad = settings.quad;
  const double rho_r = signal_scale(cfg.ell_r, cfg, env);
  const double legit =
      jammer_field_exponent(rho_r, cfg.gamma_t, settings.lambda_u,
                            settings.z_u, cfg, env, quad) +
      cfg.gamma_t * cfg.noise / rho_r;
  if (cfg.lambda_e == 0.0) return compose(legit, 0.0);

  auto eve = [&](double ell) {
    if (ell == 0.0) return 0.0;
    const double rho = signal_scale(ell, cfg, env);
    const double field = jammer_field_exponent(
        rho, cfg.gamma_t_prime, settings.lambda_u, settings.z_u, cfg, env, quad);
    return std::exp(-cfg.gamma_t_prime * cfg.noise / rho - field) * ell;
  };
  const double radius = quad.radial_truncation;
  const double range = noise_range(cfg, g2g_exponent(cfg, env));
  std::vector<double> interior = {1.0, 10.0, 100.0, 1000.0};
  for (double k : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) interior.push_back(k * range);
  const auto pts = make_partition(0.0, radius, std::move(interior));
  const auto r =
      integrate(eve, pts, quad.rel_tol, quad.abs_tol, quad.max_subdivisions);
  const double edge = eve(radius) * radius;
  if (edge > 1e-12 * r.value) {
    throw QuadratureError(
        "secrecy_multi: integrand not negligible at radial_truncation", r.value,
        edge);
  }
  return compose(legit, 2.0 * kPi * cfg.lambda_e * r.value);
}

double p_secrecy_multi(const MultiJammerSettings& settings,
                       const NetworkConfig& cfg, const EnvironmentParams& env) {
  return secrecy_multi(settings, cfg, env).p_se;
}

SecrecyResult secrecy_multi_asymptotic(const MultiJammerSettings& settings,
                                       const NetworkConfig& cfg,
                                       const EnvironmentParams& env) {
  validate_inputs(settings, cfg, env);
  const double alpha = env.alpha_nlos;
  if (!(alpha > 2.0)) {
    throw std::invalid_argument("asymptotic multi-jammer form needs alpha_nlos > 2");
  }
  const double field = 2.0 * kPi * kPi * settings.lambda_u /
                       (alpha * std::sin(2.0 * kPi / alpha));
  const double ell_pow = std::pow(cfg.ell_r, alpha);
  const double legit =
      field * std::pow(cfg.gamma_t * ell_pow * cfg.p_jam / cfg.p_tx, 2.0 / alpha) +
      cfg.gamma_t * cfg.noise * ell_pow / cfg.p_tx;
  if (cfg.lambda_e == 0.0) return compose(legit, 0.0);

  const double beta = cfg.gamma_t_prime * cfg.noise / cfg.p_tx;
  const double kappa =
      field * std::pow(cfg.gamma_t_prime * cfg.p_jam / cfg.p_tx, 2.0 / alpha);
  auto eve = [&](double ell) {
    return std::exp(-beta * std::pow(ell, alpha) - kappa * ell * ell) * ell;
  };
  const double range = std::pow(beta, -1.0 / alpha);
  std::vector<double> interior;
  for (double k : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) interior.push_back(k * range);
  double head = 4.0 * range;
  if (kappa > 0.0) {
    const double width = 1.0 / std::sqrt(kappa);
    for (double k : {0.25, 0.5, 1.0, 2.0, 4.0}) interior.push_back(k * width);
    head = std::min(head, 8.0 * width);
  }
  const auto pts = make_partition(0.0, head, std::move(interior));
  const auto r = integrate_to_infinity(eve, pts, settings.quad.rel_tol,
                                       settings.quad.abs_tol,
                                       settings.quad.max_subdivisions);
  return compose(legit, 2.0 * kPi * cfg.lambda_e * r.value);
}

double p_secrecy_multi_asymptotic(const MultiJammerSettings& settings,
                                  const NetworkConfig& cfg,
                                  const EnvironmentParams& env) {
  return secrecy_multi_asymptotic(settings, cfg, env).p_se;
}

SecrecyResult secrecy_multi_closed_form(const MultiJammerSettings& settings,
                                        const NetworkConfig& cfg,
                                        const EnvironmentParams& env) {
  validate_inputs(settings, cfg, env);
  if (std::abs(env.alpha_nlos - 4.0) > 1e-12) {
    throw std::invalid_argument("closed form requires alpha_nlos == 4");
  }
  const double lu = settings.lambda_u;
  const double ell4 = std::pow(cfg.ell_r, 4.0);
  const double legit =
      0.5 * kPi * kPi * lu * std::sqrt(cfg.gamma_t * ell4 * cfg.p_jam / cfg.p_tx) +
      cfg.gamma_t * cfg.noise * ell4 / cfg.p_tx;
  const double x = 0.25 * kPi * kPi * lu * std::sqrt(cfg.p_jam / cfg.noise);
  const double eve =
      kPi * cfg.lambda_e *
      std::sqrt(kPi * cfg.p_tx / (4.0 * cfg.gamma_t_prime * cfg.noise)) *
      scaled_erfc(x);
  return compose(legit, eve);
}

double p_secrecy_multi_closed_form(const MultiJammerSettings& settings,
                                   const NetworkConfig& cfg,
                                   const EnvironmentParams& env) {
  return secrecy_multi_closed_form(settings, cfg, env).p_se;
}

}  // namespace uavjam
