#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavcov/config_io.hpp"

namespace uavcov {

enum class Engine { Analytic, MonteCarlo, Both };

struct SweepAxis {
    std::string key;              ///< config schema key, values in config units
    std::vector<double> values;
};

/// Sweep description, itself a key/value document:
///
///     schema_version = 1
///     config = base.cfg                  # optional, relative to the spec
///     axis1.key = stations.lambda_ch_per_km2
///     axis1.values = logspace(1e-3, 1e2, 51)
///     axis2.key = battery.t_ch_s         # optional
///     axis2.values = 600, 1200
///     set.uav.v_mps = 12                 # fixed overrides
///     outputs = p_e, p_los, p_cov_s, p_cov
///     engine = analytic | montecarlo | both
///     mc.trials = 100000
///     mc.seed = 1
///
/// Value lists are comma-separated numbers, linspace(a, b, n) or
/// logspace(a, b, n).
struct SweepSpec {
    std::optional<std::filesystem::path> base_config;
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    std::map<std::string, std::string> overrides;
    std::vector<std::string> outputs = {"p_e", "p_los", "p_cov_s", "p_cov"};
    Engine engine = Engine::Analytic;
    std::uint64_t mc_trials = 100'000;
    std::uint64_t mc_seed = 1;

    /// Throws ConfigError on unknown keys, non-schema axis keys, empty or
    /// non-finite value lists and unknown outputs.
    void validate() const;

    static SweepSpec parse(std::string_view text, const std::filesystem::path& base_dir = {});
    static SweepSpec from_file(const std::filesystem::path& path);
};

/// Parses "1, 2, 3", "linspace(a, b, n)" or "logspace(a, b, n)" (the latter
/// with geometric spacing between a and b, both > 0).
std::vector<double> parse_value_list(std::string_view key, std::string_view text);

/// CSV table with a header row. Cells are preformatted strings.
struct ResultTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write_csv(std::ostream& out) const;
    std::size_t column(std::string_view name) const;  ///< throws Error if absent
};

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Column names and values of a coverage evaluation:
/// lambda_ch, t_ch, b_max_wh, v, p_e, p_los, p_cov_s, p_cov.
std::vector<std::string> coverage_header();
std::vector<std::string> coverage_row(const ScenarioConfig& cfg);

/// Evaluates the Cartesian product of the axes (axis1-major). Grid points run
/// in parallel; the table order never depends on scheduling. A point whose
/// evaluation throws gets empty value cells and the message in its status
/// column. `workers` = 0 uses the hardware concurrency.
ResultTable run_sweep(const ConfigDocument& base, const SweepSpec& spec, unsigned workers = 0);

}  // namespace uavcov
