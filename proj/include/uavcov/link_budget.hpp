#pragma once

#include "uavcov/model.hpp"

namespace uavcov {

enum class LinkState { LoS, NLoS };

/// Hover geometry. With a narrow beam the slant range is taken equal to the
/// hover altitude above the sensors, so every sensor in the event area sees
/// the same link.
struct LinkGeometry {
    double h_ut_m;
    double d_3d_m() const { return h_ut_m; }

    static LinkGeometry from(const ScenarioConfig& cfg) { return {cfg.h_ut_m()}; }
};

/// Path loss in dB: free-space term 20 log10(4 pi f d / c) plus the
/// environment's average additional loss for the link state.
double path_loss_db(double f_c_hz, double d_m, LinkState link, double eta_los_db,
                    double eta_nlos_db);

/// Same as path_loss_db, as a linear power ratio. Not forced to be >= 1.
double path_loss(double f_c_hz, double d_m, LinkState link, double eta_los_db,
                 double eta_nlos_db);

/// Convenience overload using the config's frequency and environment.
double path_loss(const ScenarioConfig& cfg, LinkState link);

/// Air-to-ground LoS probability 1 / (1 + gamma exp(-delta (90 - theta/2 - gamma))).
double los_probability(double theta_b_deg, double gamma, double delta);

/// eirp * g_r * g_h / pl. Throws DomainError if pl <= 0.
double intercepted_power(double eirp_w, double g_r_linear, double g_h, double pl_linear);

}  // namespace uavcov
