#include "uavcov/model.hpp"

#include <cmath>
#include <sstream>

#include "uavcov/errors.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

namespace {

void require(bool ok, const std::string& invariant) {
    if (!ok) throw ConfigError("invariant violated: " + invariant);
}

constexpr int kRectennaGridPoints = 1000;

}  // namespace

void PropulsionModel::validate() const {
    require(p0_w > 0, "propulsion.p0_w > 0");
    require(p_i_w > 0, "propulsion.p_i_w > 0");
    require(u_tip_mps > 0, "propulsion.u_tip_mps > 0");
    require(v0_mps > 0, "propulsion.v0_mps > 0");
    require(d0 > 0, "propulsion.d0 > 0");
    require(rho > 0, "propulsion.rho > 0");
    require(solidity > 0, "propulsion.solidity > 0");
    require(disc_area_m2 > 0, "propulsion.disc_area_m2 > 0");
}

RectennaModel::RectennaModel()
    : p_th_(0.0), p_sat_(std::numeric_limits<double>::infinity()), coeffs_{0.5}, eta_fixed_(0.5) {}

RectennaModel::RectennaModel(double p_th_w, double p_sat_w, std::vector<double> coeffs,
                             double eta_fixed)
    : p_th_(p_th_w), p_sat_(p_sat_w), coeffs_(std::move(coeffs)), eta_fixed_(eta_fixed) {
    validate();
}

RectennaModel RectennaModel::constant(double eta, double p_th_w, double p_sat_w) {
    return RectennaModel(p_th_w, p_sat_w, {eta}, eta);
}

RectennaModel RectennaModel::with_eta_fixed(double eta) const {
    return RectennaModel(p_th_, p_sat_, coeffs_, eta);
}

double RectennaModel::efficiency(double p_in) const {
    double acc = 0.0;
    for (double c : coeffs_) acc = acc * p_in + c;
    return acc;
}

void RectennaModel::validate() const {
    require(!coeffs_.empty(), "rectenna has at least one coefficient");
    for (double c : coeffs_) require(std::isfinite(c), "rectenna coefficients are finite");
    require(eta_fixed_ >= 0 && eta_fixed_ < 1, "0 <= rectenna.eta_fixed < 1");
    require(p_th_ >= 0 && p_th_ < p_sat_, "0 <= p_th < p_sat");
    if (std::isinf(p_sat_)) {
        require(coeffs_.size() == 1, "unbounded p_sat requires a constant efficiency");
        require(coeffs_[0] >= 0 && coeffs_[0] < 1, "rectenna efficiency in [0, 1)");
        return;
    }

    double prev_out = -1.0;
    for (int i = 0; i < kRectennaGridPoints; ++i) {
        const double p = p_th_ + (p_sat_ - p_th_) * i / (kRectennaGridPoints - 1);
        const double eff = efficiency(p);
        if (!(eff >= 0 && eff < 1)) {
            std::ostringstream msg;
            msg << "rectenna efficiency in [0, 1) (efficiency " << eff << " at " << p << " W)";
            require(false, msg.str());
        }
        const double out = eff * p;
        if (out < prev_out - 1e-12 * std::abs(prev_out)) {
            std::ostringstream msg;
            msg << "rectenna output non-decreasing on [p_th, p_sat] (drops at " << p << " W)";
            require(false, msg.str());
        }
        prev_out = out;
    }
}

std::string_view to_string(CoverageMode mode) {
    return mode == CoverageMode::PaperClosedForm ? "paper" : "nonlinear";
}

std::optional<CoverageMode> parse_coverage_mode(std::string_view text) {
    if (text == "paper") return CoverageMode::PaperClosedForm;
    if (text == "nonlinear") return CoverageMode::NonlinearRectenna;
    return std::nullopt;
}

void ScenarioConfig::validate() const {
    require(p_t_w >= 0, "p_t >= 0");
    require(g_t_linear > 0, "g_t > 0");
    require(theta_b_deg > 0 && theta_b_deg <= 180, "0 < theta_b <= 180");
    require(std::abs(g_t_linear * theta_b_deg * theta_b_deg / 30000.0 - 1.0) <= 1e-3,
            "g_t = 30000 / theta_b^2 within 0.1%");
    require(f_c_hz > 0, "f_c > 0");
    require(gamma_th_w >= 0, "gamma_th >= 0");
    require(g_r_linear > 0, "g_r > 0");
    require(env_gamma >= 0, "env.gamma >= 0");
    require(env_delta >= 0, "env.delta >= 0");
    require(b_max_j >= 0, "b_max >= 0");
    require(xi_ch_w >= 0, "xi_ch >= 0");
    require(t_ch_s >= 0, "t_ch >= 0");
    require(v_mps > 0, "v > 0");
    require(h_ch_m >= 0, "h_ch >= 0");
    require(h_l_m >= 0, "h_l >= 0");
    require(h_l_m <= h_ch_m, "h_l <= h_ch");
    require(h_ut_m() > 0, "h_ut > 0");
    require(lambda_ch_per_m2 > 0 && std::isfinite(lambda_ch_per_m2), "lambda_ch > 0");
    require(e_pt_j >= 0, "e_pt >= 0");
    require(e_pt_j <= b_max_j, "e_pt <= b_max");
    require(e_pt_j == 0 || p_t_w > 0, "p_t > 0 when e_pt > 0");
    require(event_radius_m >= 0, "event_radius >= 0");
    propulsion.validate();
}

ScenarioConfig ScenarioConfig::table_one(double e_pt_j) {
    ScenarioConfig cfg;
    cfg.p_t_w = units::dbm_to_watts(21.0);
    cfg.theta_b_deg = 30.8;
    cfg.g_t_linear = gain_from_beamwidth(cfg.theta_b_deg);
    cfg.f_c_hz = units::mhz_to_hz(868.0);
    cfg.gamma_th_w = 1e-6;
    cfg.g_r_linear = units::db_to_linear(9.0);
    cfg.eta_los_db = 1.6034;
    cfg.eta_nlos_db = 29.6462;
    cfg.env_gamma = 27.1157;
    cfg.env_delta = 0.1232;
    cfg.b_max_j = units::wh_to_joules(770.0);
    cfg.xi_ch_w = 770.0;
    cfg.t_ch_s = 3600.0;
    cfg.v_mps = 10.36;
    cfg.h_ch_m = 100.0;
    cfg.h_l_m = 80.0;
    cfg.lambda_ch_per_m2 = 1e-6;
    cfg.e_pt_j = e_pt_j;
    cfg.validate();
    return cfg;
}

double gain_from_beamwidth(double theta_b_deg) {
    if (!(theta_b_deg > 0 && theta_b_deg <= 180))
        throw DomainError("beamwidth must lie in (0, 180] degrees");
    return 30000.0 / (theta_b_deg * theta_b_deg);
}

double beamwidth_from_gain(double g_t_linear) {
    if (!(g_t_linear > 0)) throw DomainError("antenna gain must be positive");
    const double theta = std::sqrt(30000.0 / g_t_linear);
    if (theta > 180.0) throw DomainError("gain below the pencil-beam range (beamwidth > 180 deg)");
    return theta;
}

EirpReport check_eirp_compliance(double p_t_w, double g_t_linear) {
    EirpReport r;
    r.eirp_w = p_t_w * g_t_linear;
    r.conducted_power_ok = p_t_w <= kMaxConductedPowerW;
    r.eirp_ok = r.eirp_w <= kMaxEirpW;
    return r;
}

std::vector<std::string> config_warnings(const ScenarioConfig& cfg) {
    std::vector<std::string> out;
    const EirpReport r = check_eirp_compliance(cfg.p_t_w, cfg.g_t_linear);
    std::ostringstream msg;
    if (!r.conducted_power_ok) {
        msg << "conducted transmit power " << units::watts_to_dbm(cfg.p_t_w)
            << " dBm exceeds the 30 dBm limit";
        out.push_back(msg.str());
        msg.str("");
    }
    if (!r.eirp_ok) {
        msg << "EIRP " << units::watts_to_dbm(r.eirp_w) << " dBm exceeds the 36 dBm limit";
        out.push_back(msg.str());
    }
    return out;
}

}  // namespace uavcov
