#include "uavjam/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace uavjam {
namespace {

void require(std::vector<Violation>& out, bool ok, const char* field,
             const char* rule) {
  if (!ok) out.push_back({field, rule});
}

void throw_if_any(const std::vector<Violation>& violations) {
  if (violations.empty()) return;
  std::ostringstream msg;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) msg << "; ";
    msg << violations[i].field << ": " << violations[i].rule;
  }
  throw std::invalid_argument(msg.str());
}

}  // namespace

std::vector<Violation> check(const EnvironmentParams& env) {
  std::vector<Violation> out;
  require(out, std::isfinite(env.alpha_los) && env.alpha_los >= 2.0,
          "alpha_los", "alpha_los >= 2");
  require(out, std::isfinite(env.alpha_nlos) && env.alpha_nlos >= 2.0,
          "alpha_nlos", "alpha_nlos >= 2");
  require(out, env.alpha_nlos >= env.alpha_los, "alpha_nlos",
          "alpha_nlos >= alpha_los");
  require(out, env.m_los >= 1, "m_los", "m_los >= 1");
  require(out, std::isfinite(env.zeta) && env.zeta > 0.0, "zeta", "zeta > 0");
  require(out, std::isfinite(env.nu) && env.nu > 0.0, "nu", "nu > 0");
  require(out, std::isfinite(env.mu) && env.mu > 0.0 && env.mu <= 1.0, "mu",
          "0 < mu <= 1");
  return out;
}

std::vector<Violation> check(const NetworkConfig& cfg) {
  std::vector<Violation> out;
  auto positive = [&](double v, const char* field, const char* rule) {
    require(out, std::isfinite(v) && v > 0.0, field, rule);
  };
  auto non_negative = [&](double v, const char* field, const char* rule) {
    require(out, std::isfinite(v) && v >= 0.0, field, rule);
  };
  positive(cfg.p_tx, "p_tx", "p_tx > 0");
  non_negative(cfg.p_jam, "p_jam", "p_jam >= 0");
  positive(cfg.noise, "noise", "noise > 0");
  positive(cfg.gamma_t, "gamma_t", "gamma_t > 0");
  positive(cfg.gamma_t_prime, "gamma_t_prime", "gamma_t_prime > 0");
  positive(cfg.ell_r, "ell_r", "ell_r > 0");
  non_negative(cfg.lambda_e, "lambda_e", "lambda_e >= 0");
  non_negative(cfg.lambda_u, "lambda_u", "lambda_u >= 0");
  positive(cfg.region_radius, "region_radius", "region_radius > 0");
  require(out,
          std::isfinite(cfg.alpha_g2g) &&
              (cfg.alpha_g2g <= 0.0 || cfg.alpha_g2g >= 2.0),
          "alpha_g2g", "alpha_g2g >= 2 (or <= 0 to inherit alpha_nlos)");
  return out;
}

std::vector<Violation> check(const JammerPlacement& placement) {
  std::vector<Violation> out;
  require(out, std::isfinite(placement.d_tu) && placement.d_tu >= 0.0, "d_tu",
          "d_tu >= 0");
  require(out, std::isfinite(placement.z_u) && placement.z_u >= 0.0, "z_u",
          "z_u >= 0");
  require(out,
          std::isfinite(placement.theta_r) && placement.theta_r >= 0.0 &&
              placement.theta_r < 2.0 * std::numbers::pi,
          "theta_r", "0 <= theta_r < 2*pi");
  return out;
}

void validate(const EnvironmentParams& env) { throw_if_any(check(env)); }
void validate(const NetworkConfig& cfg) { throw_if_any(check(cfg)); }
void validate(const JammerPlacement& placement) {
  throw_if_any(check(placement));
}

double g2g_exponent(const NetworkConfig& cfg, const EnvironmentParams& env) {
  return cfg.alpha_g2g > 0.0 ? cfg.alpha_g2g : env.alpha_nlos;
}

double horizontal_distance(double d_tu, double ell_c, double theta_c) {
  const double sq =
      d_tu * d_tu + ell_c * ell_c - 2.0 * d_tu * ell_c * std::cos(theta_c);
  // Rounding can push the collinear case slightly negative.
  return std::sqrt(std::max(sq, 0.0));
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double los_decay_rate(double z_u, const EnvironmentParams& env) {
  if (z_u == 0.0) return std::numeric_limits<double>::infinity();
  // base = 1 - sqrt(2 pi) zeta / z_u * |Q(z_u / zeta) - 1/2|. With
  // |Q(x) - 1/2| = erf(x / sqrt 2) / 2 and y = x / sqrt 2 this is
  // 1 - sqrt(pi) erf(y) / (2 y), which cancels badly for small y; there the
  // series sum_{n>=1} (-1)^(n+1) y^(2n) / (n! (2n+1)) is used instead.
  const double y = z_u / (env.zeta * std::numbers::sqrt2);
  double base = 0.0;
  if (y < 0.5) {
    const double y2 = y * y;
    double power = 1.0;
    double factorial = 1.0;
    for (int n = 1; n <= 12; ++n) {
      power *= y2;
      factorial *= n;
      const double term = power / (factorial * (2 * n + 1));
      base += (n % 2 == 1) ? term : -term;
    }
  } else {
    base = 1.0 - std::sqrt(std::numbers::pi) * std::erf(y) / (2.0 * y);
  }
  base = std::clamp(base, 0.0, 1.0);
  return -std::sqrt(env.nu * env.mu) * std::log(base);
}

double los_probability(double d_c, double z_u, const EnvironmentParams& env) {
  if (!(d_c >= 0.0) || !(z_u >= 0.0)) {
    throw std::invalid_argument("los_probability: negative distance or height");
  }
  if (d_c == 0.0) return 1.0;
  if (z_u == 0.0) return 0.0;
  return std::exp(-los_decay_rate(z_u, env) * d_c);
}

double signal_scale(double ell, const NetworkConfig& cfg,
                    const EnvironmentParams& env) {
  if (ell == 0.0) return std::numeric_limits<double>::infinity();
  return cfg.p_tx * std::pow(ell, -g2g_exponent(cfg, env));
}

double jamming_scale(double d, double z_u, LinkEnvironment tag, double p_jam,
                     const EnvironmentParams& env) {
  const double alpha =
      tag == LinkEnvironment::kLos ? env.alpha_los : env.alpha_nlos;
  const double dist_sq = d * d + z_u * z_u;
  if (p_jam == 0.0) return 0.0;
  if (dist_sq == 0.0) return std::numeric_limits<double>::infinity();
  return p_jam * std::pow(dist_sq, -0.5 * alpha);
}

double sample_fading(LinkEnvironment tag, int m_los, RandomStream& rng) {
  if (tag == LinkEnvironment::kNlos || m_los == 1) {
    return std::exponential_distribution<double>(1.0)(rng);
  }
  const double m = static_cast<double>(m_los);
  return std::gamma_distribution<double>(m, 1.0 / m)(rng);
}

double sinr(double h_t, double h_u, double rho, double tau, double noise) {
  const double interference = h_u * tau;
  const double denom = interference + noise;
  if (denom == 0.0) {
    throw std::domain_error("sinr: zero noise with zero interference");
  }
  if (h_t == 0.0) return 0.0;
  return h_t * rho / denom;
}

}  // namespace uavjam
