#include "uavcov/figures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uavcov/coverage.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/service.hpp"
#include "uavcov/units.hpp"

#ifndef UAVCOV_CALIBRATION_PATH
#define UAVCOV_CALIBRATION_PATH "configs/calibration.paper-figs"
#endif

namespace uavcov {

namespace {

constexpr double kReferenceCrossing = 7.81e-6;  // m^-2
constexpr double kVelocityLo = 1.0;
constexpr double kVelocityHi = 30.0;

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (double v : values) out += (out.empty() ? "" : ", ") + format_number(v);
    return out;
}

double cell(const ResultTable& t, std::size_t row, std::string_view col) {
    return std::stod(t.rows[row][t.column(col)]);
}

double p_cov_at(ScenarioConfig cfg, double lambda, double t_ch) {
    cfg.lambda_ch_per_m2 = lambda;
    cfg.t_ch_s = t_ch;
    return coverage_total(cfg).p_cov;
}

double p_cov_at_speed(ScenarioConfig cfg, double lambda, double v) {
    cfg.lambda_ch_per_m2 = lambda;
    cfg.v_mps = v;
    return coverage_total(cfg).p_cov;
}

// Rows must be complete; a failed grid point invalidates the figure.
void require_ok(const ResultTable& t) {
    const std::size_t status = t.column("status");
    for (const auto& row : t.rows)
        if (row[status] != "ok") throw Error("figure grid point failed: " + row[status]);
}

// Curves are axis1 blocks of equal length; returns the block of one column.
std::vector<std::vector<double>> curves(const ResultTable& t, std::size_t n_curves,
                                        std::string_view col) {
    const std::size_t len = t.rows.size() / n_curves;
    std::vector<std::vector<double>> out(n_curves);
    for (std::size_t c = 0; c < n_curves; ++c)
        for (std::size_t i = 0; i < len; ++i) out[c].push_back(cell(t, c * len + i, col));
    return out;
}

FigureResult figure3(FigureId id, const ConfigDocument& calib, unsigned workers) {
    std::vector<double> t_ch = {600, 1200, 1800};
    if (id != FigureId::Fig3a) t_ch.insert(t_ch.end(), {2850, 3600});
    if (id == FigureId::Fig3c) t_ch.push_back(4350);

    SweepSpec spec;
    spec.axis1 = {"battery.t_ch_s", t_ch};
    spec.axis2 = SweepAxis{"stations.lambda_ch_per_km2", {}};
    for (int i = 0; i <= 50; ++i) spec.axis2->values.push_back(std::pow(10.0, -3.0 + 0.1 * i));
    spec.axis2->values.back() = 100.0;

    FigureResult fig{id, run_sweep(calib, spec, workers), {}, {}};
    require_ok(fig.table);
    fig.notes.push_back("charging times (s): " + join(t_ch));

    const auto p_cov = curves(fig.table, t_ch.size(), "p_cov");
    bool monotone = true;
    std::string where;
    for (std::size_t c = 0; c < t_ch.size(); ++c)
        for (std::size_t i = 1; i < p_cov[c].size(); ++i)
            if (p_cov[c][i] < p_cov[c][i - 1]) {
                monotone = false;
                where = "t_ch " + format_number(t_ch[c]) + " s";
            }
    fig.checks.push_back({"p_cov non-decreasing in station density for every charging time",
                          monotone, monotone ? "all curves" : "drops on " + where});

    if (id == FigureId::Fig3c) {
        const ScenarioConfig base = load_config(calib);
        const auto lambda_star = crossing_density(base, 600, 4350, 1e-9, 1e-4);
        bool direction = lambda_star.has_value();
        if (lambda_star) {
            const auto& lambdas = spec.axis2->values;
            for (std::size_t i = 0; i < lambdas.size(); ++i) {
                const double lam = units::per_km2_to_per_m2(lambdas[i]);
                if (lam > *lambda_star * 1.001 && !(p_cov[0][i] > p_cov.back()[i])) direction = false;
            }
            fig.notes.push_back("crossing density: " + fmt(*lambda_star) + " m^-2 (reference " +
                                fmt(kReferenceCrossing) + ", ratio " +
                                fmt(kReferenceCrossing / *lambda_star) + ")");
        }
        fig.checks.push_back(
            {"t_ch 600 s curve crosses t_ch 4350 s curve and stays above it", direction,
             lambda_star ? "lambda* = " + fmt(*lambda_star) + " m^-2" : "no crossing on [1e-9, 1e-4]"});
        const double ratio = lambda_star ? std::max(*lambda_star / kReferenceCrossing,
                                                    kReferenceCrossing / *lambda_star)
                                         : std::numeric_limits<double>::infinity();
        fig.checks.push_back({"crossing within one decade of 7.81e-06 m^-2", ratio <= 10.0,
                              "factor " + fmt(ratio)});
    }
    return fig;
}

FigureResult figure4(FigureId id, const ConfigDocument& calib, unsigned workers) {
    const std::vector<double> b_max_wh = {308, 462, 616, 770};
    const double lambda_km2 = id == FigureId::Fig4a ? 1e-3 : 1.0;

    SweepSpec spec;
    spec.axis1 = {"battery.b_max_wh", b_max_wh};
    spec.axis2 = SweepAxis{"battery.t_ch_s", {}};
    for (int t = 0; t <= 5000; t += 40) spec.axis2->values.push_back(t);
    spec.overrides["stations.lambda_ch_per_km2"] = format_number(lambda_km2);

    FigureResult fig{id, run_sweep(calib, spec, workers), {}, {}};
    require_ok(fig.table);
    const ScenarioConfig base = load_config(calib);
    fig.notes.push_back("battery set (Wh, reconstructed): " + join(b_max_wh));
    fig.notes.push_back("station density: " + fmt(units::per_km2_to_per_m2(lambda_km2)) + " m^-2");

    std::vector<double> t_sat;
    for (double b : b_max_wh) t_sat.push_back(saturation_time(base.xi_ch_w, units::wh_to_joules(b)));
    fig.notes.push_back("saturation times (s): " + join(t_sat));

    const auto& t = spec.axis2->values;
    const auto p_cov = curves(fig.table, b_max_wh.size(), "p_cov");
    const auto p_e = curves(fig.table, b_max_wh.size(), "p_e");

    double spread = 0.0;
    bool diverge = true;
    for (std::size_t c = 1; c < b_max_wh.size(); ++c)
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double d = std::abs(p_cov[c][i] - p_cov[0][i]);
            if (t[i] <= t_sat[0]) spread = std::max(spread, d);
            if (t[i] > t_sat[0] && t[i] <= t_sat[0] + 40 && !(d > 0)) diverge = false;
        }
    fig.checks.push_back({"curves coincide up to the smallest battery's saturation time",
                          spread <= 1e-12, "max spread " + fmt(spread)});
    fig.checks.push_back({"curves diverge right after it", diverge, ""});

    bool overflow = true;
    for (std::size_t c = 0; c < b_max_wh.size(); ++c)
        for (std::size_t i = 1; i < t.size(); ++i)
            if (t[i - 1] >= t_sat[c] && !(p_e[c][i] < p_e[c][i - 1])) overflow = false;
    fig.checks.push_back({"p_e strictly decreasing beyond each saturation time", overflow, ""});

    bool kinks = true;
    for (std::size_t c = 0; c < b_max_wh.size(); ++c) {
        const auto peak = std::max_element(p_cov[c].begin(), p_cov[c].end()) - p_cov[c].begin();
        if (std::abs(t[peak] - t_sat[c]) > 40.0) kinks = false;
        fig.notes.push_back("peak of " + format_number(b_max_wh[c]) + " Wh curve at t_ch " +
                            format_number(t[peak]) + " s");
    }
    fig.checks.push_back({"each curve peaks within one grid step of its saturation time", kinks, ""});
    return fig;
}

FigureResult figure5(const ConfigDocument& calib_in, unsigned workers) {
    ConfigDocument calib = calib_in;
    calib.set("battery.b_max_wh", "192.5");
    const ScenarioConfig full = load_config(calib);
    const double half = saturation_time(full.xi_ch_w, full.b_max_j) / 2.0;
    calib.set("battery.t_ch_s", format_number(half));

    const std::vector<double> lambda_km2 = {1e-3, 1e-2, 1e-1, 1.0};
    SweepSpec spec;
    spec.axis1 = {"stations.lambda_ch_per_km2", lambda_km2};
    spec.axis2 = SweepAxis{"uav.v_mps", {}};
    for (int i = 0; i <= 116; ++i) spec.axis2->values.push_back(1.0 + 0.25 * i);

    FigureResult fig{FigureId::Fig5, run_sweep(calib, spec, workers), {}, {}};
    require_ok(fig.table);
    fig.notes.push_back("battery 192.5 Wh charged for " + format_number(half) + " s (half)");

    std::vector<double> lambdas;
    for (double l : lambda_km2) lambdas.push_back(units::per_km2_to_per_m2(l));
    const auto optima = velocity_optima(load_config(calib), lambdas);

    fig.table.header.insert(fig.table.header.end() - 1, "v_opt");
    const std::size_t per_curve = spec.axis2->values.size();
    for (std::size_t r = 0; r < fig.table.rows.size(); ++r) {
        auto& row = fig.table.rows[r];
        row.insert(row.end() - 1, format_number(optima[r / per_curve].v_opt_mps));
    }

    bool non_increasing = true;
    for (std::size_t i = 0; i < optima.size(); ++i) {
        fig.notes.push_back("lambda " + fmt(optima[i].lambda_per_m2) + " m^-2: v_opt " +
                            fmt(optima[i].v_opt_mps) + " m/s, p_cov " + fmt(optima[i].p_cov));
        if (i > 0 && optima[i].v_opt_mps > optima[i - 1].v_opt_mps + 1e-3) non_increasing = false;
    }
    fig.checks.push_back({"interior velocity maximizer at 1e-9 m^-2", optima[0].interior,
                          "v_opt " + fmt(optima[0].v_opt_mps) + " m/s"});
    std::string trend;
    for (const auto& o : optima) trend += (trend.empty() ? "" : " -> ") + fmt(o.v_opt_mps);
    fig.checks.push_back({"maximizer non-increasing as station density grows", non_increasing,
                          trend});
    return fig;
}

}  // namespace

std::string_view to_string(FigureId id) {
    switch (id) {
        case FigureId::Fig3a: return "fig3a";
        case FigureId::Fig3b: return "fig3b";
        case FigureId::Fig3c: return "fig3c";
        case FigureId::Fig4a: return "fig4a";
        case FigureId::Fig4b: return "fig4b";
        case FigureId::Fig5: return "fig5";
    }
    return "";
}

std::optional<FigureId> parse_figure_id(std::string_view text) {
    for (FigureId id : {FigureId::Fig3a, FigureId::Fig3b, FigureId::Fig3c, FigureId::Fig4a,
                        FigureId::Fig4b, FigureId::Fig5})
        if (to_string(id) == text) return id;
    return std::nullopt;
}

std::filesystem::path default_calibration_path() { return UAVCOV_CALIBRATION_PATH; }

std::optional<double> crossing_density(const ScenarioConfig& base, double t_short_s,
                                       double t_long_s, double lo, double hi) {
    auto diff = [&](double log_lambda) {
        const double lam = std::exp(log_lambda);
        return p_cov_at(base, lam, t_short_s) - p_cov_at(base, lam, t_long_s);
    };
    // Scan for the first change from "short below" to "short above".
    const int n = 200;
    const double a = std::log(lo), b = std::log(hi);
    double prev_x = a, prev = diff(a);
    for (int i = 1; i <= n; ++i) {
        const double x = a + (b - a) * i / n;
        const double cur = diff(x);
        if (prev <= 0 && cur > 0) {
            double l = prev_x, h = x;
            for (int it = 0; it < 200 && h - l > 1e-12; ++it) {
                const double m = 0.5 * (l + h);
                (diff(m) > 0 ? h : l) = m;
            }
            return std::exp(0.5 * (l + h));
        }
        prev_x = x;
        prev = cur;
    }
    return std::nullopt;
}

std::vector<VelocityOptimum> velocity_optima(const ScenarioConfig& base,
                                             const std::vector<double>& lambdas) {
    std::vector<VelocityOptimum> out;
    const int n = 580;
    for (double lam : lambdas) {
        auto f = [&](double v) { return p_cov_at_speed(base, lam, v); };
        int best = 0;
        double best_val = -1.0;
        for (int i = 0; i <= n; ++i) {
            const double val = f(kVelocityLo + (kVelocityHi - kVelocityLo) * i / n);
            if (val > best_val) {
                best_val = val;
                best = i;
            }
        }
        const double step = (kVelocityHi - kVelocityLo) / n;
        double l = std::max(kVelocityLo, kVelocityLo + (best - 1) * step);
        double h = std::min(kVelocityHi, kVelocityLo + (best + 1) * step);
        const double g = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = h - g * (h - l), d = l + g * (h - l);
        double fc = f(c), fd = f(d);
        while (h - l > 1e-7) {
            if (fc > fd) {
                h = d; d = c; fd = fc; c = h - g * (h - l); fc = f(c);
            } else {
                l = c; c = d; fc = fd; d = l + g * (h - l); fd = f(d);
            }
        }
        double v = 0.5 * (l + h);
        double val = f(v);
        const double grid_v = kVelocityLo + best * step;
        if (best_val > val) {
            v = grid_v;
            val = best_val;
        }
        const bool interior = best > 0 && best < n && val > f(kVelocityLo) && val > f(kVelocityHi);
        out.push_back({lam, v, val, interior});
    }
    return out;
}

FigureResult reproduce_figure(FigureId id, const std::filesystem::path& calibration,
                              unsigned workers) {
    if (!std::filesystem::exists(calibration))
        throw ConfigError("calibration config not found at " + calibration.string() +
                          "; figure reproduction needs the shipped calibration file");
    return reproduce_figure(id, ConfigDocument::from_file(calibration), workers);
}

FigureResult reproduce_figure(FigureId id, const ConfigDocument& calibration, unsigned workers) {
    switch (id) {
        case FigureId::Fig3a:
        case FigureId::Fig3b:
        case FigureId::Fig3c: return figure3(id, calibration, workers);
        case FigureId::Fig4a:
        case FigureId::Fig4b: return figure4(id, calibration, workers);
        case FigureId::Fig5: return figure5(calibration, workers);
    }
    throw Error("unknown figure");
}

}  // namespace uavcov
