#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "uavcov/model.hpp"

namespace uavcov {

/// Rectified DC output for intercepted power p_in (watts): zero below the
/// sensitivity floor, efficiency(p_in) * p_in inside [p_th, p_sat], and held
/// at the saturation output above p_sat.
double rectify(const RectennaModel& model, double p_in_w);

/// Smallest input power whose rectified output reaches the target.
/// Throws DomainError for target <= 0 and UnreachableError when the target is
/// above the saturated output.
double invert_rectify(const RectennaModel& model, double p_out_target_w);

struct EfficiencySample {
    double power_w;
    double efficiency;
};

struct RectennaFit {
    RectennaModel model;
    double max_abs_residual = 0.0;
};

/// Least-squares polynomial fit of efficiency against intercepted power
/// (degree = polynomial degree, so degree + 1 coefficients). The sample
/// power range becomes [p_th, p_sat].
///
/// Throws FitError when there are fewer than degree + 1 distinct powers, or
/// when the fitted output is not monotone / the efficiency leaves [0, 1); the
/// message names the worst grid point.
RectennaFit fit_rectenna(const std::vector<EfficiencySample>& samples, int degree,
                         double eta_fixed = 0.5);

/// Two-column CSV with header `power_dbm,efficiency`. Lines starting with '#'
/// and blank lines are ignored. Powers are converted to watts.
std::vector<EfficiencySample> read_efficiency_csv(std::istream& in);
std::vector<EfficiencySample> read_efficiency_csv(const std::filesystem::path& path);

/// Config-document lines (rectenna.* keys) reproducing the model.
std::string rectenna_config_block(const RectennaModel& model);

}  // namespace uavcov
