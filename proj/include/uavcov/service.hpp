#pragma once

#include "uavcov/model.hpp"
#include "uavcov/quadrature.hpp"

namespace uavcov {

/// Battery level after dwelling t_ch on the pad: min(xi * t_ch, b_max).
double battery_level(double xi_ch_w, double t_ch_s, double b_max_j);

/// Dwell time after which the battery is full, b_max / xi (infinite for xi = 0).
double saturation_time(double xi_ch_w, double b_max_j);

/// Per-mission time and energy bookkeeping for a station at horizontal
/// distance r from the event-area centre.
struct MissionTiming {
    double t_j = 0.0;       ///< round trip, including descent and ascent
    double t_pt = 0.0;      ///< power transfer
    double t_ap = 0.0;      ///< data collection, clamped at 0
    double t_ap_raw = 0.0;  ///< data collection before clamping (negative when infeasible)
    double t_ch = 0.0;
    double b_uav = 0.0;
    double e_j = 0.0;       ///< round-trip energy, t_j * trip_power(v)
    bool feasible = true;   ///< t_ap_raw >= 0
    bool energy_left_ok = true;  ///< energy after service covers the return leg (E_left >= E_J / 2)

    /// (t_pt + t_ap) / (t_pt + t_ap + t_ch + t_j), zero when infeasible.
    double availability() const;
};

/// Descent/ascent is dropped when r == 0 (the UAV is still on the station).
MissionTiming mission_timing(const ScenarioConfig& cfg, double r_delta_m);

/// Quantities shared by the closed-form service analysis. Built once per
/// config.
struct ServiceAnalytics {
    double p_j = 0.0;    ///< trip power at the configured speed
    double p_h = 0.0;    ///< hover power
    double b_uav = 0.0;
    double t_pt = 0.0;
    double zeta = 0.0;   ///< V * B_uav - V * t_pt * P_T
    double r_max = 0.0;  ///< trip-energy feasibility radius (V B_uav - 2 h_l P_J) / (2 P_J), >= 0
    double r_cut = 0.0;  ///< radius beyond which the conditional is zero in the active mode
    double x0 = 0.0;     ///< supremum of the conditional over r > 0
    double x_max = 0.0;  ///< conditional at r = 0, zeta / (zeta + V t_ch P_h)
    double x_cut = 0.0;  ///< conditional just inside r_cut (0 unless the t_ap cut is active)

    static ServiceAnalytics from(const ScenarioConfig& cfg);
};

/// Service probability given the distance to the nearest station.
///
/// Inside the trip-energy radius the closed form
/// (zeta - 2 d P_J) / (zeta - 2 d (P_J - P_h) + V t_ch P_h), d = r + h_l,
/// is used, and zero outside it. By default the value is also zero whenever
/// the battery cannot fund trip, transfer and hover (t_ap < 0); in
/// strict_paper_mode only the trip-energy test applies and negative values of
/// the closed form are floored at zero.
double service_prob_conditional(const ScenarioConfig& cfg, double r_delta_m);
double service_prob_conditional(const ServiceAnalytics& a, const ScenarioConfig& cfg,
                                double r_delta_m);

/// Preimage radius of service probability x, clamped below at 0.
/// Throws DomainError outside [0, x_max].
double q_of_x(const ServiceAnalytics& a, const ScenarioConfig& cfg, double x);

/// CDF of the conditional service probability under the PPP nearest-station
/// law: exp(-lambda pi Q(x)^2), with Q clamped to [0, r_cut].
double service_cdf(const ServiceAnalytics& a, const ScenarioConfig& cfg, double x);

/// Unconditional service probability, the integral of 1 - F(x) over
/// [0, x0] (the integrand vanishes above x0). Split at x_cut.
QuadratureResult service_probability_detail(const ScenarioConfig& cfg,
                                            const QuadratureOptions& opts = {});
double service_probability(const ScenarioConfig& cfg);

/// Same quantity by integrating the conditional against the nearest-station
/// density 2 pi lambda r exp(-lambda pi r^2). Independent route used to cross
/// check service_probability.
double service_probability_rayleigh(const ScenarioConfig& cfg);

}  // namespace uavcov
