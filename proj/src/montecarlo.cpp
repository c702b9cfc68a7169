#include "uavjam/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace uavjam {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t poisson_count(double mean, RandomStream& rng) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<std::uint64_t>(mean)(rng);
}


// Jamming-link sampler with the per-height constants hoisted out of the
// per-link work. Owned by one realization so its distribution state never
// leaks across streams.
class LinkSampler {
 public:
  LinkSampler(double z_u, double p_jam, const EnvironmentParams& env)
      : z_sq_(z_u * z_u),
        los_rate_(los_decay_rate(z_u, env)),
        half_alpha_los_(0.5 * env.alpha_los),
        half_alpha_nlos_(0.5 * env.alpha_nlos),
        p_jam_(p_jam),
        use_gamma_(env.m_los != 1),
        gamma_(static_cast<double>(env.m_los), 1.0 / env.m_los) {}

  // Received jamming power gain * tau at horizontal distance sqrt(d_sq).
  double power(double d_sq, RandomStream& rng) {
    const double d = std::sqrt(d_sq);
    const double p_los = d == 0.0 ? 1.0 : std::exp(-los_rate_ * d);
    const bool los = rng.uniform() < p_los;
    double gain;
    if (los && use_gamma_) {
      gain = gamma_(rng);
    } else {
      gain = exponential_(rng);
    }
    const double dist_sq = d_sq + z_sq_;
    if (p_jam_ == 0.0) return 0.0;
    if (dist_sq == 0.0) return std::numeric_limits<double>::infinity();
    const double half_alpha = los ? half_alpha_los_ : half_alpha_nlos_;
    return gain * p_jam_ * std::exp(-half_alpha * std::log(dist_sq));
  }

 private:
  double z_sq_;
  double los_rate_;
  double half_alpha_los_;
  double half_alpha_nlos_;
  double p_jam_;
  bool use_gamma_;
  std::gamma_distribution<double> gamma_;
  std::exponential_distribution<double> exponential_{1.0};
};

// Jammers bucketed on a square grid so interference can be accumulated
// nearest-first and abandoned once it crosses a receiver's limit.
class JammerGrid {
 public:
  JammerGrid(const std::vector<PlanarPoint>& jammers, double radius,
             double lambda)
      : jammers_(jammers.size()) {
    if (jammers.empty()) return;
    cell_ = std::max(1.0 / std::sqrt(lambda), radius / 256.0);
    origin_ = -radius;
    side_ = std::max(1, static_cast<int>(std::ceil(2.0 * radius / cell_)));
    start_.assign(static_cast<std::size_t>(side_) * side_ + 1, 0);
    std::vector<std::size_t> cell_of(jammers.size());
    for (std::size_t i = 0; i < jammers.size(); ++i) {
      cell_of[i] = index(jammers[i]);
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < jammers.size(); ++i) {
      jammers_[fill[cell_of[i]]++] = jammers[i];
    }
  }

  // True iff the total jamming power at `at` stays below `limit`.
  bool interference_below(PlanarPoint at, double limit, LinkSampler& links,
                          RandomStream& rng) const {
    if (jammers_.empty()) return 0.0 < limit;
    const int cx = coord(at.x);
    const int cy = coord(at.y);
    const int max_ring =
        std::max({cx, cy, side_ - 1 - cx, side_ - 1 - cy});
    double total = 0.0;
    for (int ring = 0; ring <= max_ring; ++ring) {
      for (int iy = cy - ring; iy <= cy + ring; ++iy) {
        if (iy < 0 || iy >= side_) continue;
        const bool edge_row = iy == cy - ring || iy == cy + ring;
        const int step = edge_row ? 1 : 2 * ring;
        for (int ix = cx - ring; ix <= cx + ring; ix += std::max(step, 1)) {
          if (ix < 0 || ix >= side_) continue;
          const std::size_t c = static_cast<std::size_t>(iy) * side_ + ix;
          for (std::size_t k = start_[c]; k < start_[c + 1]; ++k) {
            const double dx = jammers_[k].x - at.x;
            const double dy = jammers_[k].y - at.y;
            total += links.power(dx * dx + dy * dy, rng);
            if (!(total < limit)) return false;
          }
        }
      }
    }
    return true;
  }

 private:
  int coord(double v) const {
    return std::clamp(static_cast<int>(std::floor((v - origin_) / cell_)), 0,
                      side_ - 1);
  }
  std::size_t index(PlanarPoint p) const {
    return static_cast<std::size_t>(coord(p.y)) * side_ + coord(p.x);
  }

  std::vector<PlanarPoint> jammers_;
  std::vector<std::size_t> start_;
  double cell_ = 1.0;
  double origin_ = 0.0;
  int side_ = 0;
};

// Eavesdroppers that could beat the threshold without any jamming, i.e.
// h * p_tx * l^-alpha > gamma' * noise. Since h ~ Exp(1) these form an
// independent thinning of the eavesdropper PPP with retention
// exp(-beta l^alpha), beta = gamma' noise / p_tx, and given retention
// h = beta l^alpha + Exp(1). The thinned process is drawn on annuli with a
// constant dominating intensity per annulus and accepted pointwise.
// Annuli stop at beta l^alpha = 50: a 53-bit uniform can never produce an
// Exp(1) draw above 37, so the plain sampler has no candidates there either.
class CandidateEves {
 public:
  CandidateEves(double lambda, double radius, double beta, double alpha)
      : lambda_(lambda), beta_(beta), alpha_(alpha) {
    if (lambda <= 0.0) return;
    const double outer = std::min(radius, std::pow(50.0 / beta, 1.0 / alpha));
    edges_.push_back(0.0);
    for (double t = 0.5; t < 50.0; t += 0.5) {
      const double ell = std::pow(t / beta, 1.0 / alpha);
      if (ell >= outer) break;
      edges_.push_back(ell);
    }
    edges_.push_back(outer);
  }

  struct Eve {
    PlanarPoint position;
    double ell;
    double gain;
  };

  // Calls visit(eve) for each candidate until it returns true; returns
  // whether any call did.
  template <class Visit>
  bool any_of(RandomStream& rng, Visit visit) const {
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
      const double a = edges_[i];
      const double b = edges_[i + 1];
      const double t_a = beta_ * std::pow(a, alpha_);
      const double mean =
          lambda_ * std::numbers::pi * (b * b - a * a) * std::exp(-t_a);
      const std::uint64_t n = poisson_count(mean, rng);
      for (std::uint64_t k = 0; k < n; ++k) {
        const double ell = std::sqrt(a * a + (b * b - a * a) * rng.uniform());
        const double t = beta_ * std::pow(ell, alpha_);
        if (!(rng.uniform() < std::exp(t_a - t))) continue;
        const double gain = t + exponential_(rng);
        const double phi = kTwoPi * rng.uniform();
        if (visit(Eve{{ell * std::cos(phi), ell * std::sin(phi)}, ell, gain})) {
          return true;
        }
      }
    }
    return false;
  }

 private:
  double lambda_;
  double beta_;
  double alpha_;
  std::vector<double> edges_;
  mutable std::exponential_distribution<double> exponential_{1.0};
};

// Jammer field drawn afresh around one receiver, nearest first: PPP arrival
// areas pi v^2 are partial sums of Exp(1) / lambda.
bool fresh_field_below(double limit, double lambda, double radius,
                       LinkSampler& links, RandomStream& rng) {
  if (lambda <= 0.0) return 0.0 < limit;
  const double max_area = std::numbers::pi * radius * radius;
  std::exponential_distribution<double> gap(lambda);
  double area = 0.0;
  double total = 0.0;
  while (true) {
    area += gap(rng);
    if (area > max_area) return true;
    total += links.power(area / std::numbers::pi, rng);
    if (!(total < limit)) return false;
  }
}

template <class Trial>
MonteCarloEstimate run_trials(const MonteCarloSettings& mc, Trial trial) {
  if (mc.realizations == 0) {
    throw std::invalid_argument("Monte Carlo needs at least one realization");
  }
  const std::uint64_t n = mc.realizations;
  const unsigned threads = static_cast<unsigned>(
      std::clamp<std::uint64_t>(mc.threads == 0 ? 1 : mc.threads, 1, n));
  std::vector<std::uint64_t> counts(threads, 0);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned t) {
    try {
      const std::uint64_t begin = n * t / threads;
      const std::uint64_t end = n * (t + 1) / threads;
      for (std::uint64_t i = begin; i < end; ++i) {
        RandomStream rng(mc.seed, i);
        if (trial(rng)) ++counts[t];
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::uint64_t successes = 0;
  for (auto c : counts) successes += c;
  return bernoulli_estimate(successes, n);
}

double sq_dist(PlanarPoint a, PlanarPoint b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double sum_interference(const std::vector<LinkDraw>& links,
                        const std::vector<PlanarPoint>& jammers, double z_u,
                        PlanarPoint at, const NetworkConfig& cfg,
                        const EnvironmentParams& env) {
  double total = 0.0;
  for (std::size_t j = 0; j < jammers.size(); ++j) {
    const double d = std::sqrt(sq_dist(jammers[j], at));
    total += links[j].gain * jamming_scale(d, z_u, links[j].tag, cfg.p_jam, env);
  }
  return total;
}

void draw_receiver_links(Realization& out, PlanarPoint at,
                         const EnvironmentParams& env, RandomStream& rng) {
  out.signal_gains.push_back(std::exponential_distribution<double>(1.0)(rng));
  auto& links = out.jamming_links.emplace_back();
  links.reserve(out.jammer_positions.size());
  for (const auto& j : out.jammer_positions) {
    links.push_back(draw_jamming_link(std::sqrt(sq_dist(j, at)),
                                      out.jammer_height, env, rng));
  }
}

Realization materialize(std::vector<PlanarPoint> jammers, double z_u,
                        const NetworkConfig& cfg, const EnvironmentParams& env,
                        RandomStream& rng) {
  Realization out;
  out.jammer_positions = std::move(jammers);
  out.jammer_height = z_u;
  out.eve_positions = sample_ppp(cfg.lambda_e, cfg.region_radius, rng);
  draw_receiver_links(out, receiver_position(cfg), env, rng);
  for (const auto& e : out.eve_positions) draw_receiver_links(out, e, env, rng);
  return out;
}

}  // namespace

MonteCarloEstimate bernoulli_estimate(std::uint64_t successes,
                                      std::uint64_t n) {
  MonteCarloEstimate out;
  out.n_realizations = n;
  out.successes = successes;
  out.mean = static_cast<double>(successes) / static_cast<double>(n);
  out.std_error = std::sqrt(out.mean * (1.0 - out.mean) / static_cast<double>(n));
  return out;
}

std::vector<PlanarPoint> sample_ppp(double lambda, double radius,
                                    RandomStream& rng) {
  const std::uint64_t count =
      poisson_count(lambda * std::numbers::pi * radius * radius, rng);
  std::vector<PlanarPoint> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = kTwoPi * rng.uniform();
    out.push_back({r * std::cos(phi), r * std::sin(phi)});
  }
  return out;
}

LinkDraw draw_jamming_link(double d, double z_u, const EnvironmentParams& env,
                           RandomStream& rng) {
  const bool los = rng.uniform() < los_probability(d, z_u, env);
  const auto tag = los ? LinkEnvironment::kLos : LinkEnvironment::kNlos;
  return {tag, sample_fading(tag, env.m_los, rng)};
}

PlanarPoint receiver_position(const NetworkConfig& cfg) { return {cfg.ell_r, 0.0}; }

PlanarPoint jammer_position(const JammerPlacement& placement) {
  return {placement.d_tu * std::cos(placement.theta_r),
          placement.d_tu * std::sin(placement.theta_r)};
}

Realization sample_realization(const JammerPlacement& placement,
                               const NetworkConfig& cfg,
                               const EnvironmentParams& env,
                               RandomStream& rng) {
  return materialize({jammer_position(placement)}, placement.z_u, cfg, env, rng);
}

Realization sample_realization_multi(const MultiJammerSettings& settings,
                                     const NetworkConfig& cfg,
                                     const EnvironmentParams& env,
                                     RandomStream& rng) {
  auto jammers = sample_ppp(settings.lambda_u, cfg.region_radius, rng);
  return materialize(std::move(jammers), settings.z_u, cfg, env, rng);
}

bool secrecy_event(const Realization& realization, const NetworkConfig& cfg,
                   const EnvironmentParams& env) {
  const auto& jammers = realization.jammer_positions;
  const double z_u = realization.jammer_height;
  const PlanarPoint rx = receiver_position(cfg);
  const double i_r = sum_interference(realization.jamming_links[0], jammers,
                                      z_u, rx, cfg, env);
  const double g_r = sinr(realization.signal_gains[0], 1.0,
                          signal_scale(cfg.ell_r, cfg, env), i_r, cfg.noise);
  if (!(g_r > cfg.gamma_t)) return false;
  for (std::size_t k = 0; k < realization.eve_positions.size(); ++k) {
    const PlanarPoint e = realization.eve_positions[k];
    const double ell = std::hypot(e.x, e.y);
    const double i_e = sum_interference(realization.jamming_links[k + 1],
                                        jammers, z_u, e, cfg, env);
    const double h = realization.signal_gains[k + 1];
    const double rho = signal_scale(ell, cfg, env);
    const double g_e = std::isinf(rho) ? rho : sinr(h, 1.0, rho, i_e, cfg.noise);
    if (!(g_e < cfg.gamma_t_prime)) return false;
  }
  return true;
}

MonteCarloEstimate simulate_secrecy(const JammerPlacement& placement,
                                    const NetworkConfig& cfg,
                                    const EnvironmentParams& env,
                                    const MonteCarloSettings& mc) {
  validate(placement);
  validate(cfg);
  validate(env);
  const PlanarPoint jam = jammer_position(placement);
  const PlanarPoint rx = receiver_position(cfg);
  const double rho_r = signal_scale(cfg.ell_r, cfg, env);
  const double alpha_t = g2g_exponent(cfg, env);
  const CandidateEves eves(cfg.lambda_e, cfg.region_radius,
                           cfg.gamma_t_prime * cfg.noise / cfg.p_tx, alpha_t);

  return run_trials(mc, [&](RandomStream& rng) {
    LinkSampler links(placement.z_u, cfg.p_jam, env);
    const double h_tr = std::exponential_distribution<double>(1.0)(rng);
    const double i_r = links.power(sq_dist(jam, rx), rng);
    if (!(h_tr * rho_r > cfg.gamma_t * (i_r + cfg.noise))) return false;
    const bool intercepted = eves.any_of(rng, [&](const auto& e) {
      const double rho = cfg.p_tx * std::pow(e.ell, -alpha_t);
      const double i_e = links.power(sq_dist(jam, e.position), rng);
      return e.gain * rho > cfg.gamma_t_prime * (i_e + cfg.noise);
    });
    return !intercepted;
  });
}

MonteCarloEstimate simulate_secrecy_materialized(
    const JammerPlacement& placement, const NetworkConfig& cfg,
    const EnvironmentParams& env, const MonteCarloSettings& mc) {
  validate(placement);
  validate(cfg);
  validate(env);
  return run_trials(mc, [&](RandomStream& rng) {
    return secrecy_event(sample_realization(placement, cfg, env, rng), cfg, env);
  });
}

MonteCarloEstimate simulate_secrecy_multi(const MultiJammerSettings& settings,
                                          const NetworkConfig& cfg,
                                          const EnvironmentParams& env,
                                          const MonteCarloSettings& mc) {
  validate(cfg);
  validate(env);
  if (!check(settings).empty()) {
    throw std::invalid_argument("simulate_secrecy_multi: invalid settings");
  }
  const PlanarPoint rx = receiver_position(cfg);
  const double rho_r = signal_scale(cfg.ell_r, cfg, env);
  const double alpha_t = g2g_exponent(cfg, env);
  const double radius = cfg.region_radius;
  const double lambda_u = settings.lambda_u;
  const CandidateEves eves(cfg.lambda_e, radius,
                           cfg.gamma_t_prime * cfg.noise / cfg.p_tx, alpha_t);

  if (mc.field == JammerField::kPerReceiver) {
    return run_trials(mc, [&](RandomStream& rng) {
      LinkSampler links(settings.z_u, cfg.p_jam, env);
      const double h_tr = std::exponential_distribution<double>(1.0)(rng);
      const double rx_limit = h_tr * rho_r / cfg.gamma_t - cfg.noise;
      if (!(rx_limit > 0.0)) return false;
      if (!fresh_field_below(rx_limit, lambda_u, radius, links, rng)) {
        return false;
      }
      const bool intercepted = eves.any_of(rng, [&](const auto& e) {
        const double rho = cfg.p_tx * std::pow(e.ell, -alpha_t);
        const double limit = e.gain * rho / cfg.gamma_t_prime - cfg.noise;
        return fresh_field_below(limit, lambda_u, radius, links, rng);
      });
      return !intercepted;
    });
  }

  return run_trials(mc, [&](RandomStream& rng) {
    const auto jammers = sample_ppp(lambda_u, radius, rng);
    const JammerGrid grid(jammers, radius, lambda_u);
    LinkSampler links(settings.z_u, cfg.p_jam, env);
    const double h_tr = std::exponential_distribution<double>(1.0)(rng);
    const double rx_limit = h_tr * rho_r / cfg.gamma_t - cfg.noise;
    if (!(rx_limit > 0.0)) return false;
    if (!grid.interference_below(rx, rx_limit, links, rng)) return false;
    const bool intercepted = eves.any_of(rng, [&](const auto& e) {
      const double rho = cfg.p_tx * std::pow(e.ell, -alpha_t);
      const double limit = e.gain * rho / cfg.gamma_t_prime - cfg.noise;
      return grid.interference_below(e.position, limit, links, rng);
    });
    return !intercepted;
  });
}

MonteCarloEstimate simulate_secrecy_multi_materialized(
    const MultiJammerSettings& settings, const NetworkConfig& cfg,
    const EnvironmentParams& env, const MonteCarloSettings& mc) {
  validate(cfg);
  validate(env);
  return run_trials(mc, [&](RandomStream& rng) {
    return secrecy_event(sample_realization_multi(settings, cfg, env, rng), cfg,
                         env);
  });
}

}  // namespace uavjam
