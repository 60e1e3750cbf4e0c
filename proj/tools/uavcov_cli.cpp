#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "uavcov/config_io.hpp"
#include "uavcov/coverage.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/figures.hpp"
#include "uavcov/link_budget.hpp"
#include "uavcov/monte_carlo.hpp"
#include "uavcov/propulsion.hpp"
#include "uavcov/rectenna.hpp"
#include "uavcov/service.hpp"
#include "uavcov/sweep.hpp"
#include "uavcov/units.hpp"

namespace fs = std::filesystem;
using namespace uavcov;

namespace {

constexpr int kUsageError = 1;
constexpr int kEvaluationError = 2;
constexpr const char* kOutputDirEnv = "UAVCOV_OUTPUT_DIR";

struct Globals {
    std::string config;
    bool strict_fcc = false;
    bool no_banner = false;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

fs::path output_dir() {
    const char* env = std::getenv(kOutputDirEnv);
    return env && *env ? fs::path(env) : fs::current_path();
}

fs::path resolve_output(const std::string& name) {
    const fs::path p(name);
    return p.is_absolute() ? p : output_dir() / p;
}

void banner(const Globals& g, std::ostream& out, const std::string& what) {
    if (g.no_banner) return;
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    out << "# uavcov " << what << " generated " << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ") << '\n';
}

ScenarioConfig load_checked(const Globals& g, const std::optional<CoverageMode>& mode = {}) {
    if (g.config.empty()) throw UsageError("--config <path> is required for this command");
    ScenarioConfig cfg = load_config_file(g.config);
    if (mode) cfg.coverage_mode = *mode;
    const auto warnings = config_warnings(cfg);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    if (g.strict_fcc && !warnings.empty()) throw Error("FCC limits exceeded (--strict-fcc)");
    return cfg;
}

std::optional<CoverageMode> mode_option(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return parse_coverage_mode(text);
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
    ResultTable t;
    t.header = cells;
    t.write_csv(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage probability of UAV-powered battery-less sensors"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "Scenario config (key = value document)");
    app.add_flag("--strict-fcc", g.strict_fcc, "Treat FCC power-limit violations as errors");
    app.add_flag("--no-banner", g.no_banner, "Omit the timestamped first line of CSV output");
    app.fallthrough();
    const std::vector<std::string> modes = {"paper", "nonlinear"};

    auto* eval = app.add_subcommand("eval", "Evaluate one model stage");
    eval->require_subcommand(1);
    eval->fallthrough();

    double prop_v = 0.0, prop_distance = 1000.0;
    auto* eval_prop = eval->add_subcommand("propulsion", "Trip and hover power");
    eval_prop->add_option("--v", prop_v, "Speed, m/s")->required();
    eval_prop->add_option("--distance", prop_distance, "Round-trip distance, m")->capture_default_str();

    double link_d = 0.0;
    std::string link_state;
    auto* eval_link = eval->add_subcommand("link", "Path loss, LoS probability, intercepted power");
    eval_link->add_option("--d", link_d, "UAV-sensor distance, m")->required();
    eval_link->add_option("--link", link_state, "los or nlos")
        ->required()
        ->check(CLI::IsMember({"los", "nlos"}));

    std::optional<double> service_r;
    auto* eval_service = eval->add_subcommand("service", "Service probability");
    eval_service->add_option("--r", service_r, "Distance to the nearest station, m");

    std::string cov_mode;
    auto* eval_cov = eval->add_subcommand("coverage", "Coverage probability");
    eval_cov->add_option("--mode", cov_mode, "paper or nonlinear")->check(CLI::IsMember(modes));

    std::string spec_path, sweep_output;
    unsigned workers = 0;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
    sweep->add_option("--spec", spec_path, "Sweep spec")->required();
    sweep->add_option("--output", sweep_output, "CSV file (default stdout)");
    sweep->add_option("--workers", workers, "Worker threads (0 = all cores)");

    std::uint64_t trials = 100'000, seed = 1;
    std::string sim_mode;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates");
    simulate->add_option("--trials", trials, "Trials")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "Seed");
    simulate->add_option("--mode", sim_mode, "paper or nonlinear")->check(CLI::IsMember(modes));
    simulate->add_option("--workers", workers, "Worker threads (0 = all cores)");

    std::string fit_csv;
    int fit_degree = 0;
    double fit_eta = 0.5;
    auto* fit = app.add_subcommand("fit-rectenna", "Fit an efficiency polynomial to a CSV table");
    fit->add_option("--csv", fit_csv, "CSV with header power_dbm,efficiency")->required();
    fit->add_option("--degree", fit_degree, "Polynomial degree")->required()->check(CLI::NonNegativeNumber);
    fit->add_option("--eta-fixed", fit_eta, "Fixed efficiency written to the block");

    std::string figure;
    auto* reproduce = app.add_subcommand("reproduce", "Regenerate a figure grid and its checks");
    reproduce->add_option("--figure", figure, "fig3a|fig3b|fig3c|fig4a|fig4b|fig5")
        ->required()
        ->check(CLI::IsMember({"fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig5"}));
    reproduce->add_option("--workers", workers, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsageError;
    }

    std::cout.precision(10);
    try {
        if (*eval_prop) {
            PropulsionModel model;
            if (!g.config.empty()) model = load_checked(g).propulsion;
            const double p_j = trip_power(model, prop_v);
            write_row(std::cout, {"v", "p_j_w", "p_h_w", "distance_m", "e_j_j"});
            write_row(std::cout, {format_number(prop_v), format_number(p_j),
                                  format_number(hover_power(model)), format_number(prop_distance),
                                  format_number(prop_distance / prop_v * p_j)});
        } else if (*eval_link) {
            const ScenarioConfig cfg = load_checked(g);
            const LinkState state = link_state == "los" ? LinkState::LoS : LinkState::NLoS;
            const double pl_db = path_loss_db(cfg.f_c_hz, link_d, state, cfg.eta_los_db, cfg.eta_nlos_db);
            const double p_i = intercepted_power(cfg.eirp_w(), cfg.g_r_linear, 1.0,
                                                 units::db_to_linear(pl_db));
            write_row(std::cout, {"d_m", "link", "pl_db", "p_los", "p_i_w"});
            write_row(std::cout, {format_number(link_d), link_state, format_number(pl_db),
                                  format_number(los_probability(cfg.theta_b_deg, cfg.env_gamma,
                                                                cfg.env_delta)),
                                  format_number(p_i)});
        } else if (*eval_service) {
            const ScenarioConfig cfg = load_checked(g);
            const ServiceAnalytics a = ServiceAnalytics::from(cfg);
            if (service_r) {
                const MissionTiming m = mission_timing(cfg, *service_r);
                write_row(std::cout, {"r_m", "p_e_given_r", "t_j", "t_pt", "t_ap", "t_ch", "feasible"});
                write_row(std::cout, {format_number(*service_r),
                                      format_number(service_prob_conditional(a, cfg, *service_r)),
                                      format_number(m.t_j), format_number(m.t_pt),
                                      format_number(m.t_ap), format_number(m.t_ch),
                                      m.feasible ? "true" : "false"});
            } else {
                const QuadratureResult q = service_probability_detail(cfg);
                write_row(std::cout, {"lambda_ch", "t_ch", "b_max_wh", "v", "p_e", "p_e_error",
                                      "zeta", "x0", "x_max", "r_max", "r_cut"});
                write_row(std::cout, {format_number(cfg.lambda_ch_per_m2), format_number(cfg.t_ch_s),
                                      format_number(units::joules_to_wh(cfg.b_max_j)),
                                      format_number(cfg.v_mps), format_number(q.value),
                                      format_number(q.error_estimate), format_number(a.zeta),
                                      format_number(a.x0),
                                      format_number(a.x_max), format_number(a.r_max),
                                      format_number(a.r_cut)});
            }
        } else if (*eval_cov) {
            const ScenarioConfig cfg = load_checked(g, mode_option(cov_mode));
            const CoverageResult r = coverage_total(cfg);
            for (const auto& d : r.diagnostics) std::cerr << "note: " << d << '\n';
            write_row(std::cout, coverage_header());
            write_row(std::cout, coverage_row(cfg));
        } else if (*sweep) {
            const SweepSpec spec = SweepSpec::from_file(spec_path);
            fs::path base_path;
            if (!g.config.empty()) base_path = g.config;
            else if (spec.base_config) base_path = *spec.base_config;
            else throw UsageError("sweep needs --config or a 'config' key in the spec");
            const ConfigDocument base = ConfigDocument::from_file(base_path);
            if (g.strict_fcc) {
                Globals check = g;
                check.config = base_path.string();
                load_checked(check);
            }
            const ResultTable table = run_sweep(base, spec, workers);
            std::ofstream file;
            if (!sweep_output.empty()) {
                const fs::path out = resolve_output(sweep_output);
                if (out.has_parent_path()) fs::create_directories(out.parent_path());
                file.open(out);
                if (!file) throw Error("cannot write " + out.string());
            }
            std::ostream& out = sweep_output.empty() ? std::cout : file;
            banner(g, out, "sweep");
            table.write_csv(out);
        } else if (*simulate) {
            const ScenarioConfig cfg = load_checked(g, mode_option(sim_mode));
            SimConfig sim;
            sim.trials = trials;
            sim.seed = seed;
            sim.workers = workers;
            banner(g, std::cout, "simulate");
            write_row(std::cout, {"estimator", "mean", "std_error", "trials", "seed"});
            const std::pair<const char*, SimEstimate> rows[] = {
                {"p_e", simulate_service(cfg, sim)},
                {"p_cov_s", simulate_sensor_coverage(cfg, sim, cfg.coverage_mode)},
                {"p_cov", simulate_coverage(cfg, sim)},
            };
            for (const auto& [name, est] : rows)
                write_row(std::cout, {name, format_number(est.mean), format_number(est.std_error),
                                      std::to_string(est.trials), std::to_string(seed)});
        } else if (*fit) {
            const RectennaFit result = fit_rectenna(read_efficiency_csv(fs::path(fit_csv)),
                                                    fit_degree, fit_eta);
            std::cout << "# max abs residual " << format_number(result.max_abs_residual) << '\n'
                      << rectenna_config_block(result.model);
        } else if (*reproduce) {
            const FigureId id = *parse_figure_id(figure);
            const fs::path calib = g.config.empty() ? default_calibration_path() : fs::path(g.config);
            const FigureResult fig = reproduce_figure(id, calib, workers);
            const fs::path out = output_dir() / (std::string(to_string(id)) + ".csv");
            fs::create_directories(out.parent_path());
            std::ofstream file(out);
            if (!file) throw Error("cannot write " + out.string());
            banner(g, file, "reproduce " + figure);
            fig.table.write_csv(file);
            std::cout << "figure " << figure << ": " << fig.table.rows.size() << " rows -> "
                      << out.string() << '\n';
            for (const auto& n : fig.notes) std::cout << "  " << n << '\n';
            for (const auto& c : fig.checks)
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name
                          << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kEvaluationError;
    }
    return 0;
}
