#include "uavcov/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "uavcov/errors.hpp"
#include "uavcov/link_budget.hpp"
#include "uavcov/parallel.hpp"
#include "uavcov/rectenna.hpp"
#include "uavcov/service.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

namespace {

constexpr std::uint64_t kBlockSize = 1024;
constexpr std::uint64_t kMaxPlacedPoints = 4096;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Neumaier-compensated running sum.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct BlockSums {
    Accumulator sum;
    Accumulator sum_sq;
};

// Runs trials in fixed blocks; each block is reduced sequentially and block
// results are combined in index order, so the result does not depend on the
// number of workers.
template <class Trial>
SimEstimate run_trials(const SimConfig& sim, bool bernoulli, Trial&& trial) {
    if (sim.trials == 0) throw DomainError("simulation needs at least one trial");
    const std::uint64_t blocks = (sim.trials + kBlockSize - 1) / kBlockSize;
    std::vector<BlockSums> partial(blocks);

    parallel_for(blocks, sim.workers, [&](std::uint64_t b) {
        const std::uint64_t end = std::min(sim.trials, (b + 1) * kBlockSize);
        for (std::uint64_t t = b * kBlockSize; t < end; ++t) {
            Rng rng = trial_rng(sim.seed, t);
            const double v = trial(rng);
            partial[b].sum.add(v);
            partial[b].sum_sq.add(v * v);
        }
    });

    Accumulator sum, sum_sq;
    for (const auto& p : partial) {
        sum.add(p.sum.value());
        sum_sq.add(p.sum_sq.value());
    }
    const double n = static_cast<double>(sim.trials);
    SimEstimate est;
    est.trials = sim.trials;
    est.mean = std::clamp(sum.value() / n, 0.0, 1.0);
    if (bernoulli) {
        est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / n);
    } else if (sim.trials > 1) {
        const double var = std::max(sum_sq.value() - n * est.mean * est.mean, 0.0) / (n - 1.0);
        est.std_error = std::sqrt(var / n);
    }
    return est;
}

double window_for(const ScenarioConfig& cfg, const SimConfig& sim) {
    const double w = sim.window_radius_m.value_or(default_window_radius(cfg));
    if (!(w > ServiceAnalytics::from(cfg).r_max))
        throw DomainError("simulation window must extend beyond the feasibility radius");
    return w;
}

// Availability of one mission for the configured service mode.
double mission_availability(const ScenarioConfig& cfg, const ServiceAnalytics& a, double r) {
    if (std::isinf(r)) return 0.0;
    const MissionTiming m = mission_timing(cfg, r);
    if (!cfg.strict_paper_mode) return m.availability();
    if (r > 0 && r > a.r_max) return 0.0;
    const double serving = m.t_pt + m.t_ap_raw;
    const double total = serving + m.t_ch + m.t_j;
    return total > 0 ? std::clamp(serving / total, 0.0, 1.0) : 0.0;
}

struct SensorDraw {
    double eirp_w, g_r, pl_los, pl_nlos, p_los;
};

SensorDraw sensor_setup(const ScenarioConfig& cfg, const SimConfig& sim) {
    return {cfg.eirp_w(), cfg.g_r_linear, path_loss(cfg, LinkState::LoS),
            path_loss(cfg, LinkState::NLoS),
            sim.force_p_los.value_or(los_probability(cfg.theta_b_deg, cfg.env_gamma, cfg.env_delta))};
}

bool sensor_activated(const ScenarioConfig& cfg, const SimConfig& sim, const SensorDraw& s,
                      CoverageMode mode, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::exponential_distribution<double> fade(1.0);
    const bool los = unit(rng) < s.p_los;
    const double g_h = sim.force_fade ? *sim.force_fade : fade(rng);
    const double p_i = intercepted_power(s.eirp_w, s.g_r, g_h, los ? s.pl_los : s.pl_nlos);
    const double p_r = mode == CoverageMode::PaperClosedForm ? cfg.rectenna.eta_fixed() * p_i
                                                             : rectify(cfg.rectenna, p_i);
    return p_r >= cfg.gamma_th_w;
}

}  // namespace

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL)));
}

double default_window_radius(const ScenarioConfig& cfg) {
    const double r_max = ServiceAnalytics::from(cfg).r_max;
    const double scale = 6.0 / std::sqrt(cfg.lambda_ch_per_m2 * units::kPi);
    return std::max({scale, 2.0 * r_max, 1.0});
}

double sample_nearest_station(double lambda, double window, Rng& rng) {
    if (!(lambda > 0)) throw DomainError("station density must be positive");
    if (!(window > 0)) throw DomainError("window radius must be positive");
    std::poisson_distribution<std::uint64_t> count(lambda * units::kPi * window * window);
    const std::uint64_t n = count(rng);
    if (n == 0) return std::numeric_limits<double>::infinity();

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (n <= kMaxPlacedPoints) {
        double best_sq = std::numeric_limits<double>::infinity();
        for (std::uint64_t i = 0; i < n; ++i) {
            const double radius = window * std::sqrt(unit(rng));
            const double angle = 2.0 * units::kPi * unit(rng);
            const double x = radius * std::cos(angle);
            const double y = radius * std::sin(angle);
            best_sq = std::min(best_sq, x * x + y * y);
        }
        return std::sqrt(best_sq);
    }
    // P(min > r) = (1 - r^2 / W^2)^n for n iid uniform points in the disc.
    const double u = unit(rng);
    const double one_minus = -std::expm1(std::log1p(-u) / static_cast<double>(n));
    return window * std::sqrt(one_minus);
}

double sample_nearest_station_rayleigh(double lambda, Rng& rng) {
    if (!(lambda > 0)) throw DomainError("station density must be positive");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return std::sqrt(-std::log1p(-unit(rng)) / (lambda * units::kPi));
}

SimEstimate simulate_service(const ScenarioConfig& cfg, const SimConfig& sim) {
    const ServiceAnalytics a = ServiceAnalytics::from(cfg);
    const double window = window_for(cfg, sim);
    return run_trials(sim, false, [&](Rng& rng) {
        const double r = sample_nearest_station(cfg.lambda_ch_per_m2, window, rng);
        return mission_availability(cfg, a, r);
    });
}

SimEstimate simulate_coverage(const ScenarioConfig& cfg, const SimConfig& sim) {
    return simulate_coverage(cfg, sim, cfg.coverage_mode);
}

SimEstimate simulate_coverage(const ScenarioConfig& cfg, const SimConfig& sim, CoverageMode mode) {
    const ServiceAnalytics a = ServiceAnalytics::from(cfg);
    const double window = window_for(cfg, sim);
    const SensorDraw s = sensor_setup(cfg, sim);
    return run_trials(sim, true, [&](Rng& rng) {
        const double r = sample_nearest_station(cfg.lambda_ch_per_m2, window, rng);
        const double availability = mission_availability(cfg, a, r);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const bool serviced = unit(rng) < availability;
        const bool active = sensor_activated(cfg, sim, s, mode, rng);
        return serviced && active ? 1.0 : 0.0;
    });
}

SimEstimate simulate_sensor_coverage(const ScenarioConfig& cfg, const SimConfig& sim,
                                     CoverageMode mode) {
    const SensorDraw s = sensor_setup(cfg, sim);
    return run_trials(sim, true, [&](Rng& rng) {
        return sensor_activated(cfg, sim, s, mode, rng) ? 1.0 : 0.0;
    });
}

}  // namespace uavcov
