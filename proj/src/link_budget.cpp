#include "uavcov/link_budget.hpp"

#include <cmath>

#include "uavcov/errors.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

double path_loss_db(double f_c_hz, double d_m, LinkState link, double eta_los_db,
                    double eta_nlos_db) {
    if (!(f_c_hz > 0)) throw DomainError("carrier frequency must be positive");
    if (!(d_m > 0)) throw DomainError("link distance must be positive");
    const double fspl = 20.0 * std::log10(4.0 * units::kPi * f_c_hz * d_m / units::kSpeedOfLight);
    return fspl + (link == LinkState::LoS ? eta_los_db : eta_nlos_db);
}

double path_loss(double f_c_hz, double d_m, LinkState link, double eta_los_db,
                 double eta_nlos_db) {
    return units::db_to_linear(path_loss_db(f_c_hz, d_m, link, eta_los_db, eta_nlos_db));
}

double path_loss(const ScenarioConfig& cfg, LinkState link) {
    return path_loss(cfg.f_c_hz, LinkGeometry::from(cfg).d_3d_m(), link, cfg.eta_los_db,
                     cfg.eta_nlos_db);
}

double los_probability(double theta_b_deg, double gamma, double delta) {
    if (!(theta_b_deg > 0 && theta_b_deg <= 180))
        throw DomainError("beamwidth must lie in (0, 180] degrees");
    if (gamma < 0 || delta < 0) throw DomainError("environment constants must be non-negative");
    const double elevation = 90.0 - theta_b_deg / 2.0;
    return 1.0 / (1.0 + gamma * std::exp(-delta * (elevation - gamma)));
}

double intercepted_power(double eirp_w, double g_r_linear, double g_h, double pl_linear) {
    if (!(pl_linear > 0)) throw DomainError("path loss must be positive");
    return eirp_w * g_r_linear * g_h / pl_linear;
}

}  // namespace uavcov
