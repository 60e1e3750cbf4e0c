#pragma once

#include <string>
#include <vector>

#include "uavcov/link_budget.hpp"
#include "uavcov/model.hpp"

namespace uavcov {

struct LinkCoverage {
    double threshold_fade = 0.0;  ///< smallest fading power that activates the sensor
    double coverage = 0.0;        ///< P(G_h >= threshold_fade), unit-mean exponential fade
};

/// Sensor-side part: LoS/NLoS mixture of per-link activation probabilities.
struct SensorCoverage {
    CoverageMode mode = CoverageMode::PaperClosedForm;
    double p_los = 0.0;
    LinkCoverage los;
    LinkCoverage nlos;
    double p_cov_s = 0.0;
    std::vector<std::string> diagnostics;
};

struct CoverageResult {
    CoverageMode mode = CoverageMode::PaperClosedForm;
    double p_e = 0.0;
    double p_los = 0.0;
    double p_cov_s = 0.0;
    double p_cov = 0.0;  ///< p_e * p_cov_s
    LinkCoverage los;
    LinkCoverage nlos;
    std::vector<std::string> diagnostics;
};

/// PaperClosedForm: threshold fade gamma_th * PL / (eta_fixed * EIRP * G_R),
/// with PL including the environment loss.
/// NonlinearRectenna: threshold fade invert_rectify(gamma_th) * PL / (EIRP * G_R),
/// zero coverage when gamma_th is above the saturated output.
/// A zero threshold always gives full coverage.
SensorCoverage coverage_sensor(const ScenarioConfig& cfg);
SensorCoverage coverage_sensor(const ScenarioConfig& cfg, CoverageMode mode);

/// p_cov = service_probability(cfg) * coverage_sensor(cfg).p_cov_s.
CoverageResult coverage_total(const ScenarioConfig& cfg);
CoverageResult coverage_total(const ScenarioConfig& cfg, CoverageMode mode);

}  // namespace uavcov
