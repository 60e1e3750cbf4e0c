#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <vector>

#include "uavcov/model.hpp"
#include "uavcov/units.hpp"

namespace uavcov::testing {

/// WPT energy used by the shipped calibration file.
inline constexpr double kCalibratedEpt = 75.536;

inline ScenarioConfig calibrated() { return ScenarioConfig::table_one(kCalibratedEpt); }

inline std::filesystem::path source_dir() { return UAVCOV_SOURCE_DIR; }
inline std::filesystem::path calibration_file() {
    return source_dir() / "configs" / "calibration.paper-figs";
}
inline std::filesystem::path standin_csv() {
    return source_dir() / "data" / "rectenna_868mhz_standin.csv";
}

/// Kolmogorov limiting distribution with the small-sample correction
/// lambda = (sqrt(n) + 0.12 + 0.11 / sqrt(n)) * D.
inline double kolmogorov_p_value(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-17) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Two-sided one-sample KS statistic.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, f - i / n, (i + 1) / n - f});
    }
    return d;
}

/// Random valid scenario around the parameter table: battery, charge time,
/// speed, density, transfer energy, altitudes and link constants all vary.
inline ScenarioConfig random_config(std::mt19937_64& rng) {
    auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    ScenarioConfig cfg = ScenarioConfig::table_one(0.0);
    cfg.b_max_j = units::wh_to_joules(uni(100, 900));
    cfg.t_ch_s = uni(200, 6000);
    cfg.v_mps = uni(3, 30);
    cfg.lambda_ch_per_m2 = std::pow(10.0, uni(-9.5, -4));
    cfg.h_ch_m = uni(50, 150);
    cfg.h_l_m = uni(0, cfg.h_ch_m - 5);
    cfg.p_t_w = units::dbm_to_watts(uni(10, 24));
    cfg.e_pt_j = uni(0, 400);
    cfg.strict_paper_mode = uni(0, 1) < 0.3;
    cfg.validate();
    return cfg;
}

}  // namespace uavcov::testing
