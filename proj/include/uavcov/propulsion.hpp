#pragma once

#include "uavcov/model.hpp"

namespace uavcov {

/// Forward-flight power at airspeed v (m/s):
/// P0 (1 + 3 v^2 / U_tip^2) + P_i v0 / v + 0.5 d0 rho s A v^3.
/// Throws DomainError for v <= 0.
double trip_power(const PropulsionModel& model, double v_mps);

/// Hover power, P0 + P_i.
double hover_power(const PropulsionModel& model);

/// Energy for the out-and-back trip over horizontal distance r plus the
/// descent/ascent h_l, both flown at v: 2 (r + h_l) / v * trip_power(v).
/// Each leg costs exactly half.
double trip_energy(const PropulsionModel& model, double r_m, double h_l_m, double v_mps);

struct SpeedInterval {
    double lo = 1.0;
    double hi = 30.0;
};

/// Speed minimising trip_power on the interval (golden-section search to
/// 1e-3 m/s). If the discrete derivative on a 1e4-point grid changes sign
/// more than once the grid argmin is returned instead.
double optimal_trip_velocity(const PropulsionModel& model, SpeedInterval range = {});

}  // namespace uavcov
