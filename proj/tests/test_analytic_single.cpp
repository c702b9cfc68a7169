#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

#include "uavjam/analytic_single.hpp"

using namespace uavjam;

namespace {

constexpr double kPi = std::numbers::pi;

// Direct sampling of the legitimate link: Exp(1) signal fading, LoS drawn
// from the LoS probability, jamming fading per environment.
double sampled_success(double d, double z, double rho, const NetworkConfig& cfg,
                       const EnvironmentParams& env, int n, bool force_los,
                       double& se) {
  RandomStream rng(2024);
  std::exponential_distribution<double> expo(1.0);
  std::gamma_distribution<double> gam(env.m_los, 1.0 / env.m_los);
  const double p_los = los_probability(d, z, env);
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const double h_t = expo(rng);
    const bool los = force_los || rng.uniform() < p_los;
    const double h_u = los ? gam(rng) : expo(rng);
    const double tau = jamming_scale(d, z, los ? LinkEnvironment::kLos
                                               : LinkEnvironment::kNlos,
                                     cfg.p_jam, env);
    hits += h_t * rho / (h_u * tau + cfg.noise) > cfg.gamma_t;
  }
  const double p = static_cast<double>(hits) / n;
  se = std::sqrt(p * (1 - p) / n);
  return p;
}

}  // namespace

TEST_CASE("legitimate link success, closed forms") {
  const NetworkConfig cfg;
  const EnvironmentParams env;
  const double rho = signal_scale(340.0, cfg, env);
  CHECK(rho == doctest::Approx(1.3798243042607379e-17).epsilon(1e-14));
  // arbitrary-precision evaluation of the conditional success forms
  CHECK(p_success_conditional(540.0, 100.0, LinkEnvironment::kLos, rho, 3.0, cfg, env) ==
        doctest::Approx(0.029722950896706523).epsilon(1e-12));
  CHECK(p_success_conditional(540.0, 100.0, LinkEnvironment::kNlos, rho, 3.0, cfg, env) ==
        doctest::Approx(0.92137319707094609).epsilon(1e-12));
  CHECK(p_success({200.0, 100.0, kPi}, cfg, env) ==
        doctest::Approx(0.69644574866283066).epsilon(1e-12));
}

TEST_CASE("legitimate link success, limits") {
  const EnvironmentParams env;
  NetworkConfig cfg;
  cfg.p_jam = 0.0;
  const double rho = signal_scale(cfg.ell_r, cfg, env);
  const double noise_only = std::exp(-cfg.gamma_t * cfg.noise / rho);
  CHECK(p_success({200.0, 100.0, kPi}, cfg, env) == doctest::Approx(noise_only).epsilon(1e-15));
  CHECK(p_success_conditional(50.0, 10.0, LinkEnvironment::kNlos, rho, 3.0, cfg, env) ==
        doctest::Approx(noise_only).epsilon(1e-15));
  CHECK(p_success_conditional(50.0, 10.0, LinkEnvironment::kLos, rho, 3.0, cfg, env) ==
        doctest::Approx(noise_only).epsilon(1e-15));
  cfg.noise = 1e-300;
  CHECK(p_success({200.0, 100.0, kPi}, cfg, env) == 1.0);

  // same path loss on both branches so only the fading law differs
  EnvironmentParams rayleigh;
  rayleigh.m_los = 1;
  rayleigh.alpha_los = rayleigh.alpha_nlos;
  const NetworkConfig base;
  for (double d : {1.0, 100.0, 1000.0}) {
    CHECK(p_success_conditional(d, 80.0, LinkEnvironment::kLos, rho, 3.0, base, rayleigh) ==
          doctest::Approx(p_success_conditional(d, 80.0, LinkEnvironment::kNlos, rho, 3.0,
                                                base, rayleigh)).epsilon(1e-14));
  }
}

TEST_CASE("legitimate link success against direct sampling") {
  const NetworkConfig cfg;
  const EnvironmentParams env;
  const double rho = signal_scale(cfg.ell_r, cfg, env);
  double se = 0.0;
  const double p = sampled_success(540.0, 100.0, rho, cfg, env, 1000000, false, se);
  CHECK(std::abs(p - p_success({200.0, 100.0, kPi}, cfg, env)) <= 4.0 * se);

  const double p_los = sampled_success(100.0, 100.0, rho, cfg, env, 1000000, true, se);
  CHECK(std::abs(p_los - p_success_conditional(100.0, 100.0, LinkEnvironment::kLos, rho,
                                               cfg.gamma_t, cfg, env)) <= 4.0 * se);
}

TEST_CASE("interference outage is the complement of noiseless success") {
  NetworkConfig cfg;
  cfg.noise = 1e-300;
  const EnvironmentParams env;
  const double rho = signal_scale(300.0, cfg, env);
  for (auto tag : {LinkEnvironment::kLos, LinkEnvironment::kNlos}) {
    for (double d : {10.0, 300.0, 3000.0}) {
      CHECK(interference_outage(d, 50.0, tag, rho, 3.0, cfg.p_jam, env) ==
            doctest::Approx(1.0 - p_success_conditional(d, 50.0, tag, rho, 3.0, cfg, env))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("eavesdropping integral") {
  const NetworkConfig cfg;
  const EnvironmentParams env;
  const QuadratureSettings quad;
  // independent double quadrature (scipy, rel 1e-9)
  const auto f = eavesdrop_integral({200.0, 100.0, kPi}, cfg, env, quad);
  CHECK(f.value == doctest::Approx(1163475.73296455).epsilon(1e-7));
  CHECK(eavesdrop_integral({600.0, 0.0, kPi}, cfg, env, quad).value ==
        doctest::Approx(1503822.21601734).epsilon(1e-7));
  CHECK(p_eavesdrop({200.0, 100.0, kPi}, cfg, env, quad) ==
        doctest::Approx(0.441073817032006).epsilon(1e-7));
  // the angle to the Rx does not enter
  CHECK(eavesdrop_integral({200.0, 100.0, 1.0}, cfg, env, quad).value ==
        doctest::Approx(f.value).epsilon(1e-12));

  NetworkConfig none = cfg;
  none.lambda_e = 0.0;
  CHECK(p_eavesdrop({200.0, 100.0, kPi}, none, env, quad) == 0.0);
  NetworkConfig dense = cfg;
  dense.lambda_e = 1e-2;
  CHECK(p_eavesdrop({200.0, 100.0, kPi}, dense, env, quad) == 1.0);
}

TEST_CASE("secrecy probability") {
  const EnvironmentParams env;
  const QuadratureSettings quad;
  NetworkConfig cfg;
  const auto r = p_secrecy({200.0, 100.0, kPi}, cfg, env, quad);
  CHECK(r.p_se == doctest::Approx(r.p_s * (1.0 - r.p_e)).epsilon(1e-15));
  CHECK(r.p_se == doctest::Approx(0.3892617639).epsilon(1e-8));

  cfg.lambda_e = 0.0;
  const auto s = p_secrecy({200.0, 100.0, kPi}, cfg, env, quad);
  CHECK(s.p_se == s.p_s);

  cfg.p_jam = 0.0;
  cfg.noise = 1e-300;
  CHECK(p_secrecy({200.0, 100.0, kPi}, cfg, env, quad).p_se == 1.0);

  CHECK_THROWS_AS(p_secrecy({-1.0, 100.0, kPi}, NetworkConfig{}, env, quad),
                  std::invalid_argument);
}

TEST_CASE("asymptotic secrecy near the Tx") {
  const EnvironmentParams env;
  NetworkConfig cfg;
  // arbitrary-precision evaluation of the closed form
  CHECK(p_secrecy_asymptotic({1.0, 1.0, kPi}, cfg, env) ==
        doctest::Approx(0.38866569283229349).epsilon(1e-12));
  cfg.lambda_e = 0.0;
  CHECK(p_secrecy_asymptotic({1.0, 1.0, kPi}, cfg, env) ==
        p_success({1.0, 1.0, kPi}, cfg, env));
  NetworkConfig loud;
  loud.p_jam = 1e10;
  const double ratio = p_secrecy_asymptotic({1.0, 1.0, kPi}, loud, env) /
                       p_success({1.0, 1.0, kPi}, loud, env);
  CHECK(ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("probability guard") {
  CHECK(checked_probability(1.0 + 1e-12, "x") == 1.0);
  CHECK(checked_probability(-1e-12, "x") == 0.0);
  CHECK_THROWS_AS(checked_probability(1.1, "x"), std::domain_error);
  CHECK_THROWS_AS(checked_probability(std::nan(""), "x"), std::domain_error);
}
