#pragma once

#include <cmath>
#include <numbers>

// Unit conversions used at the config/report boundary. Everything inside the
// library is SI: W, J, s, m, Hz, linear gains.
namespace uavcov::units {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

inline constexpr double wh_to_joules(double wh) { return wh * 3600.0; }
inline constexpr double joules_to_wh(double j) { return j / 3600.0; }

inline constexpr double mhz_to_hz(double mhz) { return mhz * 1e6; }

inline constexpr double per_km2_to_per_m2(double d) { return d * 1e-6; }
inline constexpr double per_m2_to_per_km2(double d) { return d * 1e6; }

}  // namespace uavcov::units
