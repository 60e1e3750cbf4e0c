#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavcov/config_io.hpp"
#include "uavcov/sweep.hpp"

namespace uavcov {

enum class FigureId { Fig3a, Fig3b, Fig3c, Fig4a, Fig4b, Fig5 };

std::string_view to_string(FigureId id);
std::optional<FigureId> parse_figure_id(std::string_view text);

/// Qualitative assertion checked on a figure's data.
struct FigureCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct FigureResult {
    FigureId id;
    ResultTable table;
    std::vector<FigureCheck> checks;
    std::vector<std::string> notes;  ///< informational summary lines
};

/// Location of the shipped calibration file, compiled in as the source tree's
/// configs/calibration.paper-figs.
std::filesystem::path default_calibration_path();

/// Crossing density where the short-charge curve overtakes the long-charge
/// one, found by bisection in log-density on [lo, hi]. Empty if the sign of
/// the difference does not change.
std::optional<double> crossing_density(const ScenarioConfig& base, double t_short_s,
                                       double t_long_s, double lo_per_m2, double hi_per_m2);

/// Velocities on [1, 30] m/s maximizing the coverage probability for each
/// density, refined by golden-section search around the best grid point.
struct VelocityOptimum {
    double lambda_per_m2;
    double v_opt_mps;
    double p_cov;
    bool interior;
};
std::vector<VelocityOptimum> velocity_optima(const ScenarioConfig& base,
                                             const std::vector<double>& lambdas_per_m2);

/// Builds the figure's grid from the calibration document and checks its
/// qualitative assertions. Throws ConfigError when the calibration file is
/// missing.
FigureResult reproduce_figure(FigureId id, const std::filesystem::path& calibration,
                              unsigned workers = 0);
FigureResult reproduce_figure(FigureId id, const ConfigDocument& calibration,
                              unsigned workers = 0);

}  // namespace uavcov
