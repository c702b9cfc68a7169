#include "uavjam/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "uavjam/analytic_single.hpp"

namespace uavjam {
namespace {

struct Probe {
  double d = 0.0;
  double z = 0.0;
  double value = 0.0;
};

bool better(const Probe& a, const Probe& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.d != b.d) return a.d < b.d;
  return a.z < b.z;
}

std::string describe(double d, double z) {
  std::ostringstream os;
  os.precision(17);
  os << "objective failed at d_tu=" << d << ", z_u=" << z;
  return os.str();
}

using Objective = std::function<double(double, double)>;

// Evaluates every probe, in parallel when asked. The first failure, in probe
// order, is rethrown so error reports do not depend on scheduling.
void evaluate(std::vector<Probe>& probes, const Objective& f,
              unsigned threads) {
  std::vector<std::exception_ptr> errors(probes.size());
  auto work = [&](std::size_t i) {
    try {
      const double v = f(probes[i].d, probes[i].z);
      if (!std::isfinite(v)) {
        throw ObjectiveError(probes[i].d, probes[i].z,
                             describe(probes[i].d, probes[i].z) +
                                 ": non-finite value");
      }
      probes[i].value = v;
    } catch (const ObjectiveError&) {
      errors[i] = std::current_exception();
    } catch (const std::exception& e) {
      errors[i] = std::make_exception_ptr(ObjectiveError(
          probes[i].d, probes[i].z,
          describe(probes[i].d, probes[i].z) + ": " + e.what()));
    }
  };
  const unsigned n_workers = static_cast<unsigned>(
      std::min<std::size_t>(std::max(1u, threads), probes.size()));
  if (n_workers <= 1) {
    for (std::size_t i = 0; i < probes.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < probes.size(); i = next++) work(i);
        });
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

OptimalPlacement search(const PlacementSearchSpec& spec, const Objective& f) {
  std::vector<Probe> grid;
  for (int i = 0; i < spec.d_tu.points; ++i) {
    for (int j = 0; j < spec.z_u.points; ++j) {
      grid.push_back({spec.d_tu.at(i), spec.z_u.at(j), 0.0});
    }
  }
  evaluate(grid, f, spec.threads);
  std::uint64_t evaluations = grid.size();
  Probe best = grid.front();
  for (const auto& p : grid) {
    if (better(p, best)) best = p;
  }

  double step_d = spec.d_tu.step();
  double step_z = spec.z_u.step();
  for (int round = 0; round < spec.refine_iterations; ++round) {
    step_d *= 0.5;
    step_z *= 0.5;
    std::vector<Probe> local;
    for (int i = -1; i <= 1; ++i) {
      for (int j = -1; j <= 1; ++j) {
        if (i == 0 && j == 0) continue;
        const double d = best.d + i * step_d;
        const double z = best.z + j * step_z;
        if (d < spec.d_tu.lo || d > spec.d_tu.hi) continue;
        if (z < spec.z_u.lo || z > spec.z_u.hi) continue;
        if ((i != 0 && step_d == 0.0) || (j != 0 && step_z == 0.0)) continue;
        local.push_back({d, z, 0.0});
      }
    }
    evaluate(local, f, spec.threads);
    evaluations += local.size();
    for (const auto& p : local) {
      if (better(p, best)) best = p;
    }
  }
  return {best.d, best.z, best.value, evaluations};
}

void require_valid(const PlacementSearchSpec& spec, const char* who) {
  const auto v = check(spec);
  if (v.empty()) return;
  std::string msg = std::string(who) + ": invalid search spec:";
  for (const auto& x : v) msg += " " + x.field + " (" + x.rule + ");";
  throw std::invalid_argument(msg);
}

}  // namespace

ObjectiveError::ObjectiveError(double d_tu, double z_u, const std::string& what)
    : std::runtime_error(what), d_tu_(d_tu), z_u_(z_u) {}

PlacementSearchSpec default_search(const NetworkConfig& cfg) {
  PlacementSearchSpec spec;
  spec.d_tu = {0.0, 2.0 * cfg.ell_r, 41};
  spec.z_u = {0.0, 500.0, 26};
  return spec;
}

std::vector<Violation> check(const PlacementSearchSpec& spec) {
  std::vector<Violation> out;
  auto axis = [&](const GridAxis& a, const std::string& name) {
    if (!(std::isfinite(a.lo) && std::isfinite(a.hi))) {
      out.push_back({name, "bounds finite"});
      return;
    }
    if (a.lo < 0.0) out.push_back({name + ".lo", "lo >= 0"});
    if (!(a.lo <= a.hi)) out.push_back({name, "lo <= hi"});
    if (a.points < 1) out.push_back({name + ".points", "points >= 1"});
    if (a.points == 1 && a.lo != a.hi) {
      out.push_back({name + ".points", "points >= 2 unless lo == hi"});
    }
  };
  axis(spec.d_tu, "d_tu");
  axis(spec.z_u, "z_u");
  if (spec.refine_iterations < 0) {
    out.push_back({"refine_iterations", "refine_iterations >= 0"});
  }
  return out;
}

OptimalPlacement optimize_placement(const PlacementSearchSpec& spec,
                                    const NetworkConfig& cfg,
                                    const EnvironmentParams& env,
                                    const QuadratureSettings& quad) {
  require_valid(spec, "optimize_placement");
  if (spec.objective != PlacementObjective::kSingle) {
    throw std::invalid_argument(
        "optimize_placement: objective must be single; use "
        "optimize_height_multi for a jammer field");
  }
  validate(cfg);
  validate(env);
  return search(spec, [&](double d, double z) {
    return p_secrecy({d, z, std::numbers::pi}, cfg, env, quad).p_se;
  });
}

OptimalPlacement optimize_height_multi(const PlacementSearchSpec& spec,
                                       const MultiJammerSettings& settings,
                                       const NetworkConfig& cfg,
                                       const EnvironmentParams& env) {
  require_valid(spec, "optimize_height_multi");
  if (spec.objective != PlacementObjective::kMulti) {
    throw std::invalid_argument(
        "optimize_height_multi: objective must be multi");
  }
  validate(cfg);
  validate(env);
  PlacementSearchSpec heights = spec;
  heights.d_tu = {0.0, 0.0, 1};
  return search(heights, [&](double, double z) {
    MultiJammerSettings s = settings;
    s.z_u = z;
    return p_secrecy_multi(s, cfg, env);
  });
}

}  // namespace uavjam
