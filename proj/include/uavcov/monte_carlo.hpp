#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "uavcov/model.hpp"

namespace uavcov {

struct SimConfig {
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 1;
    /// Radius of the simulated station disc around the event area. Defaults to
    /// max(6 / sqrt(lambda pi), 2 r_max).
    std::optional<double> window_radius_m;
    /// Worker threads; 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;

    // Degenerate-randomness hooks for tests.
    std::optional<double> force_p_los;
    std::optional<double> force_fade;
};

struct SimEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

using Rng = std::mt19937_64;

/// Independent generator for one trial, derived from (seed, trial index) only.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

double default_window_radius(const ScenarioConfig& cfg);

/// Distance from the disc centre to the nearest of N ~ Poisson(lambda pi W^2)
/// uniform points; +infinity when the disc is empty. Large N uses the exact
/// law of the minimum of N uniform-disc radii instead of placing every point.
double sample_nearest_station(double lambda_per_m2, double window_radius_m, Rng& rng);

/// Inverse-CDF draw from the nearest-neighbour law 1 - exp(-lambda pi r^2).
double sample_nearest_station_rayleigh(double lambda_per_m2, Rng& rng);

/// Mean availability fraction (t_pt + t_ap) / (t_pt + t_ap + t_ch + t_j) over
/// random station layouts; infeasible missions count as 0. Standard error from
/// the sample standard deviation.
SimEstimate simulate_service(const ScenarioConfig& cfg, const SimConfig& sim);

/// Per trial: Bernoulli service with the drawn availability, Bernoulli LoS,
/// unit-mean exponential fade, intercepted then rectified power; success iff
/// serviced and the rectified power reaches gamma_th. Bernoulli standard error.
SimEstimate simulate_coverage(const ScenarioConfig& cfg, const SimConfig& sim);
SimEstimate simulate_coverage(const ScenarioConfig& cfg, const SimConfig& sim, CoverageMode mode);

/// Sensor side only (no service draw).
SimEstimate simulate_sensor_coverage(const ScenarioConfig& cfg, const SimConfig& sim,
                                     CoverageMode mode);

}  // namespace uavcov
