#include "uavcov/service.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "uavcov/errors.hpp"
#include "uavcov/propulsion.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

namespace {

double transfer_time(const ScenarioConfig& cfg) {
    return cfg.p_t_w > 0 ? cfg.e_pt_j / cfg.p_t_w : 0.0;
}

// Closed-form conditional for total vertical + horizontal leg length d.
double closed_form(const ServiceAnalytics& a, const ScenarioConfig& cfg, double d) {
    const double num = a.zeta - 2.0 * d * a.p_j;
    const double den = a.zeta - 2.0 * d * (a.p_j - a.p_h) + cfg.v_mps * cfg.t_ch_s * a.p_h;
    if (!(den > 0)) return 0.0;
    return num / den;
}

double raw_q(const ServiceAnalytics& a, const ScenarioConfig& cfg, double x) {
    const double kappa = 2.0 * (a.p_j * (1.0 - x) + x * a.p_h);
    return (a.zeta * (1.0 - x) - cfg.h_l_m * kappa - x * cfg.v_mps * cfg.t_ch_s * a.p_h) / kappa;
}

void check_x(const ServiceAnalytics& a, double x) {
    if (!(x >= 0.0 && x <= a.x_max))
        throw DomainError("service probability argument outside [0, x_max]");
}

}  // namespace

double battery_level(double xi_ch_w, double t_ch_s, double b_max_j) {
    return std::min(xi_ch_w * t_ch_s, b_max_j);
}

double saturation_time(double xi_ch_w, double b_max_j) {
    return xi_ch_w > 0 ? b_max_j / xi_ch_w : std::numeric_limits<double>::infinity();
}

double MissionTiming::availability() const {
    if (!feasible) return 0.0;
    const double serving = t_pt + t_ap;
    const double total = serving + t_ch + t_j;
    return total > 0 ? serving / total : 0.0;
}

MissionTiming mission_timing(const ScenarioConfig& cfg, double r_delta_m) {
    if (!(r_delta_m >= 0)) throw DomainError("distance to the station must be non-negative");
    const double p_j = trip_power(cfg.propulsion, cfg.v_mps);
    const double p_h = hover_power(cfg.propulsion);
    const double h_l = r_delta_m == 0.0 ? 0.0 : cfg.h_l_m;

    MissionTiming m;
    m.t_ch = cfg.t_ch_s;
    m.b_uav = battery_level(cfg.xi_ch_w, cfg.t_ch_s, cfg.b_max_j);
    m.t_j = 2.0 * (r_delta_m + h_l) / cfg.v_mps;
    m.e_j = m.t_j * p_j;
    m.t_pt = transfer_time(cfg);
    m.t_ap_raw = (m.b_uav - m.t_pt * (p_h + cfg.p_t_w) - m.t_j * p_j) / p_h;
    m.feasible = m.t_ap_raw >= 0.0;
    m.t_ap = std::max(m.t_ap_raw, 0.0);

    const double e_left = m.b_uav - m.t_pt * (p_h + cfg.p_t_w) - m.t_ap * p_h - m.e_j / 2.0;
    m.energy_left_ok = e_left >= m.e_j / 2.0 - 1e-9 * std::max(1.0, m.b_uav);
    return m;
}

ServiceAnalytics ServiceAnalytics::from(const ScenarioConfig& cfg) {
    ServiceAnalytics a;
    a.p_j = trip_power(cfg.propulsion, cfg.v_mps);
    a.p_h = hover_power(cfg.propulsion);
    a.b_uav = battery_level(cfg.xi_ch_w, cfg.t_ch_s, cfg.b_max_j);
    a.t_pt = transfer_time(cfg);
    const double v = cfg.v_mps;
    const double h_l = cfg.h_l_m;
    a.zeta = v * a.b_uav - v * a.t_pt * cfg.p_t_w;
    a.r_max = std::max((v * a.b_uav - 2.0 * h_l * a.p_j) / (2.0 * a.p_j), 0.0);

    if (!(a.zeta > 0)) return a;  // nothing left for service even at r = 0

    a.x_max = a.zeta / (a.zeta + v * cfg.t_ch_s * a.p_h);

    // Numerator zero of the closed form; and the t_ap >= 0 frontier, which
    // also charges hover power for the transfer time.
    const double r_numerator = a.zeta / (2.0 * a.p_j) - h_l;
    const double r_funded = v * (a.b_uav - a.t_pt * (a.p_h + cfg.p_t_w)) / (2.0 * a.p_j) - h_l;
    a.r_cut = std::max(std::min(cfg.strict_paper_mode ? r_numerator : r_funded, a.r_max), 0.0);

    if (a.r_cut > 0) {
        a.x0 = std::clamp(closed_form(a, cfg, h_l), 0.0, a.x_max);
        a.x_cut = std::clamp(closed_form(a, cfg, a.r_cut + h_l), 0.0, a.x0);
    }
    return a;
}

double service_prob_conditional(const ScenarioConfig& cfg, double r_delta_m) {
    return service_prob_conditional(ServiceAnalytics::from(cfg), cfg, r_delta_m);
}

double service_prob_conditional(const ServiceAnalytics& a, const ScenarioConfig& cfg,
                                double r_delta_m) {
    if (!(r_delta_m >= 0)) throw DomainError("distance to the station must be non-negative");
    if (!(a.zeta > 0)) return 0.0;
    if (r_delta_m == 0.0) {
        if (!cfg.strict_paper_mode && !mission_timing(cfg, 0.0).feasible) return 0.0;
        return a.x_max;
    }
    if (r_delta_m > a.r_max) return 0.0;
    if (!cfg.strict_paper_mode && r_delta_m > a.r_cut) return 0.0;
    return std::clamp(closed_form(a, cfg, r_delta_m + cfg.h_l_m), 0.0, 1.0);
}

double q_of_x(const ServiceAnalytics& a, const ScenarioConfig& cfg, double x) {
    check_x(a, x);
    return std::max(raw_q(a, cfg, x), 0.0);
}

double service_cdf(const ServiceAnalytics& a, const ScenarioConfig& cfg, double x) {
    check_x(a, x);
    const double q = std::clamp(raw_q(a, cfg, x), 0.0, a.r_cut);
    return std::exp(-cfg.lambda_ch_per_m2 * units::kPi * q * q);
}

QuadratureResult service_probability_detail(const ScenarioConfig& cfg,
                                            const QuadratureOptions& opts) {
    const ServiceAnalytics a = ServiceAnalytics::from(cfg);
    QuadratureResult total;
    if (!(a.x0 > 0)) return total;

    const double lambda_pi = cfg.lambda_ch_per_m2 * units::kPi;
    auto survival = [&](double x) {
        const double q = std::clamp(raw_q(a, cfg, x), 0.0, a.r_cut);
        return -std::expm1(-lambda_pi * q * q);
    };
    // Dense stations squeeze the drop of the survival term into a thin band
    // below x0; breakpoints at a few nearest-distance scales keep the
    // adaptive rule from stepping over it.
    std::vector<double> edges{0.0, a.x_cut, a.x0};
    const double scale = std::sqrt(lambda_pi);
    for (double w : {0.5, 1.5, 3.0, 6.0}) {
        const double r = w / scale;
        if (r < a.r_cut) edges.push_back(std::clamp(closed_form(a, cfg, r + cfg.h_l_m), a.x_cut, a.x0));
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i) {
        const double lo = edges[i - 1], hi = edges[i];
        if (!(hi > lo)) continue;
        const QuadratureResult part = integrate(survival, lo, hi, opts);
        total.value += part.value;
        total.error_estimate += part.error_estimate;
        total.intervals += part.intervals;
    }
    return total;
}

double service_probability(const ScenarioConfig& cfg) {
    return service_probability_detail(cfg).value;
}

double service_probability_rayleigh(const ScenarioConfig& cfg) {
    const ServiceAnalytics a = ServiceAnalytics::from(cfg);
    if (!(a.r_cut > 0)) return 0.0;

    // Substitute w = r sqrt(lambda pi); the density becomes 2 w exp(-w^2) dw
    // and the integrand stays smooth up to r_cut.
    const double scale = std::sqrt(cfg.lambda_ch_per_m2 * units::kPi);
    const double w_max = std::min(a.r_cut * scale, 9.0);
    auto integrand = [&](double w) {
        const double r = std::min(w / scale, a.r_cut);
        const double s = r > 0 ? service_prob_conditional(a, cfg, r) : a.x0;
        return s * 2.0 * w * std::exp(-w * w);
    };
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 31>::integrate(integrand, 0.0, w_max, 15, 1e-12);
}

}  // namespace uavcov
