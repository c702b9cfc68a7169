#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "uavjam/channel.hpp"

using namespace uavjam;

TEST_CASE("horizontal distance") {
  CHECK(horizontal_distance(0.0, 340.0, 1.234) == 340.0);
  CHECK(horizontal_distance(100.0, 100.0, 0.0) == 0.0);
  CHECK(horizontal_distance(100.0, 340.0, std::numbers::pi) ==
        doctest::Approx(440.0).epsilon(1e-15));
}

TEST_CASE("Q function") {
  CHECK(q_function(0.0) == 0.5);
  CHECK(q_function(40.0) <= 1e-300);
  // arbitrary-precision erfc
  CHECK(q_function(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-14));
  CHECK(q_function(-0.5) == doctest::Approx(0.6914624612740131).epsilon(1e-14));
  CHECK(q_function(4.0) == doctest::Approx(3.1671241833119921e-5).epsilon(1e-13));
}

TEST_CASE("LoS probability") {
  const EnvironmentParams env;
  CHECK(los_probability(0.0, 100.0, env) == 1.0);
  CHECK(los_probability(100.0, 0.0, env) == 0.0);
  const double p = los_probability(100.0, 100.0, env);
  CHECK(p > 0.0);
  CHECK(p < 1.0);
  CHECK(p == doctest::Approx(0.77487401414203779).epsilon(1e-12));
  CHECK(los_probability(1000.0, 20.0, env) ==
        doctest::Approx(1.6485989929295316e-8).epsilon(1e-10));
  CHECK(los_probability(50.0, 500.0, env) ==
        doctest::Approx(0.97680437510796862).epsilon(1e-12));
  // small heights go through the series branch and must stay monotone
  double prev = 0.0;
  for (double z : {1e-6, 1e-3, 0.1, 1.0, 5.0, 7.4, 7.6, 20.0}) {
    const double q = los_probability(100.0, z, env);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("fading moments") {
  RandomStream rng(11);
  const int n = 1000000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) s1 += sample_fading(LinkEnvironment::kNlos, 2, rng);
  CHECK(s1 / n == doctest::Approx(1.0).epsilon(0.01));

  s1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double h = sample_fading(LinkEnvironment::kLos, 2, rng);
    s1 += h;
    s2 += h * h;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  CHECK(std::abs(mean - 1.0) <= 0.01);
  CHECK(std::abs(var - 0.5) <= 0.01);

  RandomStream a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    CHECK(sample_fading(LinkEnvironment::kLos, 1, a) ==
          sample_fading(LinkEnvironment::kNlos, 1, b));
  }
}

TEST_CASE("SINR") {
  CHECK(sinr(2.0, 0.0, 1e-12, 1e-13, 1e-13) == 2.0 * 1e-12 / 1e-13);
  CHECK(sinr(0.0, 1.0, 1e-12, 1e-13, 1e-13) == 0.0);
  CHECK(sinr(1.0, 1.0, 1e-12, 1e-13, 1e-13) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("validation reports each broken rule") {
  EnvironmentParams env;
  env.alpha_nlos = 1.5;
  const auto v = check(env);
  bool found = false;
  for (const auto& x : v) found |= x.field == "alpha_nlos" && x.rule == "alpha_nlos >= 2";
  CHECK(found);
  CHECK_THROWS_AS(validate(env), std::invalid_argument);

  NetworkConfig cfg;
  cfg.lambda_e = -1.0;
  const auto w = check(cfg);
  REQUIRE(w.size() == 1);
  CHECK(w[0].field == "lambda_e");

  CHECK(check(EnvironmentParams{}).empty());
  CHECK(check(NetworkConfig{}).empty());
  CHECK(check(JammerPlacement{}).empty());
}
