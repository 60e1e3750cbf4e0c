#include "uavcov/propulsion.hpp"

#include <cmath>
#include <vector>

#include "uavcov/errors.hpp"

namespace uavcov {

double trip_power(const PropulsionModel& m, double v) {
    if (!(v > 0)) throw DomainError("trip velocity must be positive");
    const double blade = m.p0_w * (1.0 + 3.0 * v * v / (m.u_tip_mps * m.u_tip_mps));
    const double induced = m.p_i_w * m.v0_mps / v;
    const double parasite = 0.5 * m.d0 * m.rho * m.solidity * m.disc_area_m2 * v * v * v;
    return blade + induced + parasite;
}

double hover_power(const PropulsionModel& m) { return m.p0_w + m.p_i_w; }

double trip_energy(const PropulsionModel& m, double r_m, double h_l_m, double v) {
    return 2.0 * (r_m + h_l_m) / v * trip_power(m, v);
}

double optimal_trip_velocity(const PropulsionModel& m, SpeedInterval range) {
    if (!(range.lo > 0 && range.lo < range.hi && std::isfinite(range.hi)))
        throw DomainError("velocity interval must satisfy 0 < lo < hi");

    constexpr int kGrid = 10'000;
    std::vector<double> power(kGrid);
    const double step = (range.hi - range.lo) / (kGrid - 1);
    for (int i = 0; i < kGrid; ++i) power[i] = trip_power(m, range.lo + step * i);

    int sign_changes = 0;
    int prev_sign = 0;
    for (int i = 1; i < kGrid; ++i) {
        const double d = power[i] - power[i - 1];
        const int sign = (d > 0) - (d < 0);
        if (sign == 0) continue;
        if (prev_sign != 0 && sign != prev_sign) ++sign_changes;
        prev_sign = sign;
    }
    if (sign_changes > 1) {
        int best = 0;
        for (int i = 1; i < kGrid; ++i)
            if (power[i] < power[best]) best = i;
        return range.lo + step * best;
    }

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = range.lo, b = range.hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = trip_power(m, c), fd = trip_power(m, d);
    while (b - a > 1e-4) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = trip_power(m, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = trip_power(m, d);
        }
    }
    const double mid = 0.5 * (a + b);
    // Snap to an endpoint when the minimum sits on the boundary.
    if (mid - range.lo < 1e-3 && trip_power(m, range.lo) <= trip_power(m, mid)) return range.lo;
    if (range.hi - mid < 1e-3 && trip_power(m, range.hi) <= trip_power(m, mid)) return range.hi;
    return mid;
}

}  // namespace uavcov
