#include "uavcov/coverage.hpp"

#include <cmath>
#include <limits>

#include "uavcov/rectenna.hpp"
#include "uavcov/service.hpp"

namespace uavcov {

namespace {

LinkCoverage from_threshold(double g_star) {
    if (std::isinf(g_star)) return {g_star, 0.0};
    return {g_star, std::exp(-g_star)};
}

}  // namespace

SensorCoverage coverage_sensor(const ScenarioConfig& cfg) {
    return coverage_sensor(cfg, cfg.coverage_mode);
}

SensorCoverage coverage_sensor(const ScenarioConfig& cfg, CoverageMode mode) {
    SensorCoverage out;
    out.mode = mode;
    out.p_los = los_probability(cfg.theta_b_deg, cfg.env_gamma, cfg.env_delta);

    const double received_scale = cfg.eirp_w() * cfg.g_r_linear;  // P_I per unit fade, per unit 1/PL
    const double pl_los = path_loss(cfg, LinkState::LoS);
    const double pl_nlos = path_loss(cfg, LinkState::NLoS);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    if (cfg.gamma_th_w <= 0) {
        out.los = {0.0, 1.0};
        out.nlos = {0.0, 1.0};
    } else if (mode == CoverageMode::PaperClosedForm) {
        const double eta = cfg.rectenna.eta_fixed();
        if (eta > 0 && received_scale > 0) {
            out.los = from_threshold(cfg.gamma_th_w * pl_los / (eta * received_scale));
            out.nlos = from_threshold(cfg.gamma_th_w * pl_nlos / (eta * received_scale));
        } else {
            out.los = out.nlos = {kInf, 0.0};
            out.diagnostics.emplace_back("zero rectifier efficiency or EIRP: threshold unreachable");
        }
    } else {
        const RectennaModel& rect = cfg.rectenna;
        const bool bounded = !std::isinf(rect.p_sat());
        if ((bounded && cfg.gamma_th_w > rectify(rect, rect.p_sat())) ||
            (!bounded && rect.efficiency(0.0) <= 0) || received_scale <= 0) {
            out.los = out.nlos = {kInf, 0.0};
            out.diagnostics.emplace_back(
                "activation threshold exceeds the saturated rectenna output: coverage is 0");
        } else {
            const double p_in_star = invert_rectify(rect, cfg.gamma_th_w);
            out.los = from_threshold(p_in_star * pl_los / received_scale);
            out.nlos = from_threshold(p_in_star * pl_nlos / received_scale);
        }
    }
    out.p_cov_s = out.p_los * out.los.coverage + (1.0 - out.p_los) * out.nlos.coverage;
    return out;
}

CoverageResult coverage_total(const ScenarioConfig& cfg) {
    return coverage_total(cfg, cfg.coverage_mode);
}

CoverageResult coverage_total(const ScenarioConfig& cfg, CoverageMode mode) {
    const SensorCoverage sensor = coverage_sensor(cfg, mode);
    CoverageResult r;
    r.mode = mode;
    r.p_e = service_probability(cfg);
    r.p_los = sensor.p_los;
    r.p_cov_s = sensor.p_cov_s;
    r.p_cov = r.p_e * r.p_cov_s;
    r.los = sensor.los;
    r.nlos = sensor.nlos;
    r.diagnostics = sensor.diagnostics;
    return r;
}

}  // namespace uavcov
