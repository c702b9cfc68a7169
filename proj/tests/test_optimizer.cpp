#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "uavjam/analytic_single.hpp"
#include "uavjam/optimizer.hpp"

using namespace uavjam;

TEST_CASE("constant objective resolves ties to the first grid point") {
  const EnvironmentParams env;
  NetworkConfig cfg;
  cfg.lambda_e = 0.0;
  cfg.p_jam = 0.0;
  PlacementSearchSpec spec = default_search(cfg);
  spec.d_tu = {10.0, 110.0, 6};
  spec.z_u = {5.0, 55.0, 6};
  const auto r = optimize_placement(spec, cfg, env, QuadratureSettings{});
  CHECK(r.d_tu_star == 10.0);
  CHECK(r.z_u_star == 5.0);

  spec.objective = PlacementObjective::kMulti;
  const auto m = optimize_height_multi(spec, {0.0, 0.0, {}}, cfg, env);
  CHECK(m.z_u_star == 5.0);
  CHECK(m.d_tu_star == 0.0);
}

TEST_CASE("incumbent dominates the coarse grid") {
  const EnvironmentParams env;
  const QuadratureSettings quad;
  const NetworkConfig cfg;
  PlacementSearchSpec spec;
  spec.d_tu = {0.0, 800.0, 5};
  spec.z_u = {0.0, 300.0, 4};
  spec.refine_iterations = 3;
  spec.threads = 2;
  const auto r = optimize_placement(spec, cfg, env, quad);
  for (int i = 0; i < spec.d_tu.points; ++i) {
    for (int j = 0; j < spec.z_u.points; ++j) {
      const double v =
          p_secrecy({spec.d_tu.at(i), spec.z_u.at(j), std::numbers::pi}, cfg, env, quad).p_se;
      CHECK(r.p_se_star >= v);
    }
  }
  CHECK(r.p_se_star ==
        p_secrecy({r.d_tu_star, r.z_u_star, std::numbers::pi}, cfg, env, quad).p_se);
  CHECK(r.evaluations > 20);

  spec.threads = 1;
  const auto s = optimize_placement(spec, cfg, env, quad);
  CHECK(s.d_tu_star == r.d_tu_star);
  CHECK(s.z_u_star == r.z_u_star);
  CHECK(s.p_se_star == r.p_se_star);
}

TEST_CASE("grid resolution stability") {
  const EnvironmentParams env;
  const QuadratureSettings quad;
  const NetworkConfig cfg;
  PlacementSearchSpec spec = default_search(cfg);
  spec.z_u = {100.0, 100.0, 1};
  const auto coarse = optimize_placement(spec, cfg, env, quad);
  spec.d_tu.points = 2 * spec.d_tu.points - 1;
  const auto fine = optimize_placement(spec, cfg, env, quad);
  CHECK(std::abs(coarse.p_se_star - fine.p_se_star) < 1e-4);
}

TEST_CASE("failures name the probe") {
  const EnvironmentParams env;
  QuadratureSettings starved;
  starved.max_subdivisions = 1;
  PlacementSearchSpec spec;
  spec.d_tu = {200.0, 200.0, 1};
  spec.z_u = {100.0, 100.0, 1};
  try {
    optimize_placement(spec, NetworkConfig{}, env, starved);
    FAIL("expected an objective error");
  } catch (const ObjectiveError& e) {
    CHECK(e.d_tu() == 200.0);
    CHECK(e.z_u() == 100.0);
    CHECK(std::string(e.what()).find("d_tu=200") != std::string::npos);
  }

  PlacementSearchSpec bad;
  bad.d_tu = {5.0, 1.0, 3};
  CHECK_FALSE(check(bad).empty());
  CHECK_THROWS_AS(optimize_placement(bad, NetworkConfig{}, env, QuadratureSettings{}),
                  std::invalid_argument);
  PlacementSearchSpec single;
  CHECK_THROWS_AS(optimize_height_multi(single, {}, NetworkConfig{}, env),
                  std::invalid_argument);
}
