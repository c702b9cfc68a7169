#include <doctest.h>

#include <cmath>
#include <numbers>

#include "uavjam/analytic_single.hpp"
#include "uavjam/montecarlo.hpp"

using namespace uavjam;

namespace {

constexpr double kPi = std::numbers::pi;

bool agree(const MonteCarloEstimate& a, double b, double sigmas = 4.0) {
  return std::abs(a.mean - b) <= sigmas * a.std_error;
}

bool agree(const MonteCarloEstimate& a, const MonteCarloEstimate& b) {
  return std::abs(a.mean - b.mean) <=
         4.0 * std::hypot(a.std_error, b.std_error);
}

MonteCarloSettings runs(std::uint64_t n, std::uint64_t seed = 3) {
  MonteCarloSettings mc;
  mc.realizations = n;
  mc.seed = seed;
  return mc;
}

}  // namespace

TEST_CASE("Bernoulli estimate") {
  const auto e = bernoulli_estimate(25, 100);
  CHECK(e.mean == 0.25);
  CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
  CHECK(bernoulli_estimate(0, 10).std_error == 0.0);
}

TEST_CASE("PPP sampling") {
  RandomStream rng(9);
  CHECK(sample_ppp(0.0, 1e4, rng).empty());
  const int n = 10000;
  double total = 0.0;
  bool inside = true;
  for (int i = 0; i < n; ++i) {
    RandomStream s(9, i);
    const auto pts = sample_ppp(1e-5, 1e4, s);
    total += pts.size();
    for (const auto& p : pts) inside &= std::hypot(p.x, p.y) <= 1e4;
  }
  const double mean = 1e-5 * kPi * 1e8;
  CHECK(std::abs(total / n - mean) <= 4.0 * std::sqrt(mean / n));
  CHECK(inside);
}

TEST_CASE("empirical LoS fraction") {
  const EnvironmentParams env;
  RandomStream rng(4);
  const int n = 200000;
  int los = 0;
  for (int i = 0; i < n; ++i) {
    los += draw_jamming_link(100.0, 100.0, env, rng).tag == LinkEnvironment::kLos;
  }
  const double p = los_probability(100.0, 100.0, env);
  CHECK(std::abs(static_cast<double>(los) / n - p) <= 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("single jammer simulation") {
  const EnvironmentParams env;
  const QuadratureSettings quad;
  const NetworkConfig cfg;
  const JammerPlacement at{200.0, 100.0, kPi};

  SUBCASE("agrees with the analysis") {
    const auto e = simulate_secrecy(at, cfg, env, runs(200000));
    CHECK(agree(e, p_secrecy(at, cfg, env, quad).p_se));
  }
  SUBCASE("lazy and materialized scoring agree") {
    const auto lazy = simulate_secrecy(at, cfg, env, runs(20000, 5));
    const auto full = simulate_secrecy_materialized(at, cfg, env, runs(20000, 6));
    CHECK(agree(lazy, full));
  }
  SUBCASE("independent of thread count") {
    auto one = runs(5000);
    auto three = runs(5000);
    three.threads = 3;
    const auto a = simulate_secrecy(at, cfg, env, one);
    const auto b = simulate_secrecy(at, cfg, env, three);
    CHECK(a.successes == b.successes);
    CHECK(a.mean == b.mean);
  }
  SUBCASE("no jamming gives the noise-only success") {
    NetworkConfig quiet = cfg;
    quiet.p_jam = 0.0;
    quiet.lambda_e = 0.0;
    const double rho = signal_scale(quiet.ell_r, quiet, env);
    CHECK(agree(simulate_secrecy(at, quiet, env, runs(100000)),
                std::exp(-quiet.gamma_t * quiet.noise / rho)));
    quiet.noise = 1e-300;
    CHECK(simulate_secrecy(at, quiet, env, runs(1000)).mean == 1.0);
  }
  SUBCASE("unreachable threshold") {
    NetworkConfig hard = cfg;
    hard.gamma_t = 1e30;
    CHECK(simulate_secrecy(at, hard, env, runs(1000)).mean == 0.0);
  }
}

TEST_CASE("jammer field simulation") {
  const EnvironmentParams env;
  NetworkConfig cfg;
  cfg.ell_r = 50.0;
  cfg.lambda_e = 1e-5;
  cfg.p_jam = 2e-11;
  const QuadratureSettings quad;

  SUBCASE("no jammers reduces to a silent single jammer") {
    NetworkConfig sparse = cfg;
    sparse.lambda_e = 5e-7;
    NetworkConfig silent = sparse;
    silent.p_jam = 0.0;
    const double expected = p_secrecy({0.0, 100.0, kPi}, silent, env, quad).p_se;
    CHECK(expected > 0.1);
    CHECK(agree(simulate_secrecy_multi({0.0, 100.0, quad}, sparse, env, runs(4000)),
                expected));
  }
  SUBCASE("no eavesdroppers leaves the legitimate factor") {
    NetworkConfig quiet = cfg;
    quiet.lambda_e = 0.0;
    const auto r = secrecy_multi({7e-6, 100.0, quad}, quiet, env);
    CHECK(agree(simulate_secrecy_multi({7e-6, 100.0, quad}, quiet, env, runs(4000)), r.p_s));
  }
  SUBCASE("lazy and materialized shared fields agree") {
    NetworkConfig small = cfg;
    small.region_radius = 2500.0;
    auto mc = runs(1500, 8);
    mc.field = JammerField::kShared;
    const auto lazy = simulate_secrecy_multi({7e-6, 100.0, quad}, small, env, mc);
    mc.seed = 9;
    const auto full = simulate_secrecy_multi_materialized({7e-6, 100.0, quad}, small, env, mc);
    CHECK(agree(lazy, full));
  }
}
