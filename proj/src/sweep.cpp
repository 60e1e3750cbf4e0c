#include "uavcov/sweep.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>

#include "uavcov/coverage.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/monte_carlo.hpp"
#include "uavcov/parallel.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

namespace {

const std::vector<std::string> kOutputs = {"p_e", "p_los", "p_cov_s", "p_cov"};

[[noreturn]] void spec_error(const std::string& what) {
    throw ConfigError("sweep spec: " + what);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
    const double v = parse_number(key, text);
    if (!(v >= 1 && v == std::floor(v) && v < 1.8e19))
        spec_error("key '" + key + "' expects a positive integer");
    return static_cast<std::uint64_t>(v);
}

std::string z_score(double analytic, const SimEstimate& mc) {
    const double diff = std::abs(analytic - mc.mean);
    if (mc.std_error > 0) return format_number(diff / mc.std_error);
    return format_number(diff == 0 ? 0.0 : std::numeric_limits<double>::infinity());
}

double analytic_output(const CoverageResult& r, const std::string& name) {
    if (name == "p_e") return r.p_e;
    if (name == "p_los") return r.p_los;
    if (name == "p_cov_s") return r.p_cov_s;
    return r.p_cov;
}

SimEstimate simulate_output(const ScenarioConfig& cfg, const SimConfig& sim,
                            const std::string& name) {
    if (name == "p_e") return simulate_service(cfg, sim);
    if (name == "p_cov_s") return simulate_sensor_coverage(cfg, sim, cfg.coverage_mode);
    return simulate_coverage(cfg, sim);
}

}  // namespace

std::vector<double> parse_value_list(std::string_view key_view, std::string_view text_view) {
    const std::string key(key_view);
    const std::string text(text_view);
    static const std::regex range(R"(^\s*(linspace|logspace)\s*\(([^,]+),([^,]+),([^,]+)\)\s*$)");
    std::smatch m;
    std::vector<double> out;
    if (std::regex_match(text, m, range)) {
        const double a = parse_number(key, std::regex_replace(m[2].str(), std::regex(R"(\s)"), ""));
        const double b = parse_number(key, std::regex_replace(m[3].str(), std::regex(R"(\s)"), ""));
        const std::uint64_t n =
            parse_count(key, std::regex_replace(m[4].str(), std::regex(R"(\s)"), ""));
        const bool log = m[1] == "logspace";
        if (log && !(a > 0 && b > 0)) spec_error("logspace bounds of '" + key + "' must be > 0");
        for (std::uint64_t i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
            double v = log ? std::exp(std::log(a) + t * (std::log(b) - std::log(a)))
                           : a + t * (b - a);
            if (i + 1 == n && n > 1) v = b;
            if (i == 0) v = a;
            out.push_back(v);
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            if (b == std::string::npos) spec_error("empty value in '" + key + "'");
            out.push_back(parse_number(key, item.substr(b, e - b + 1)));
        }
    }
    if (out.empty()) spec_error("key '" + key + "' has no values");
    for (double v : out)
        if (!std::isfinite(v)) spec_error("key '" + key + "' has a non-finite value");
    return out;
}

void SweepSpec::validate() const {
    auto check_axis = [](const SweepAxis& axis, const std::string& name) {
        if (!is_schema_key(axis.key) || axis.key == "schema_version")
            spec_error(name + ".key '" + axis.key + "' is not a config key");
        if (axis.values.empty()) spec_error(name + " has no values");
        for (double v : axis.values)
            if (!std::isfinite(v)) spec_error(name + " has a non-finite value");
    };
    check_axis(axis1, "axis1");
    if (axis2) {
        check_axis(*axis2, "axis2");
        if (axis2->key == axis1.key) spec_error("axis1 and axis2 use the same key");
    }
    for (const auto& [key, value] : overrides)
        if (!is_schema_key(key)) spec_error("override 'set." + key + "' is not a config key");
    if (outputs.empty()) spec_error("outputs is empty");
    for (const auto& o : outputs)
        if (std::find(kOutputs.begin(), kOutputs.end(), o) == kOutputs.end())
            spec_error("unknown output '" + o + "'");
    if (engine != Engine::Analytic && mc_trials == 0) spec_error("mc.trials must be >= 1");
}

SweepSpec SweepSpec::parse(std::string_view text, const std::filesystem::path& base_dir) {
    const ConfigDocument doc = ConfigDocument::parse(text, base_dir);
    SweepSpec spec;
    bool has_axis1 = false;
    for (const auto& [key, value] : doc.entries()) {
        if (key == "schema_version") {
            if (parse_number(key, value) != kSchemaVersion)
                spec_error("unsupported schema_version " + value);
        } else if (key == "config") {
            std::filesystem::path p(value);
            spec.base_config = p.is_relative() ? base_dir / p : p;
        } else if (key == "axis1.key") {
            spec.axis1.key = value;
            has_axis1 = true;
        } else if (key == "axis1.values") {
            spec.axis1.values = parse_value_list(key, value);
        } else if (key == "axis2.key") {
            if (!spec.axis2) spec.axis2.emplace();
            spec.axis2->key = value;
        } else if (key == "axis2.values") {
            if (!spec.axis2) spec.axis2.emplace();
            spec.axis2->values = parse_value_list(key, value);
        } else if (key.rfind("set.", 0) == 0) {
            spec.overrides[key.substr(4)] = value;
        } else if (key == "outputs") {
            spec.outputs.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item.erase(0, item.find_first_not_of(" \t"));
                item.erase(item.find_last_not_of(" \t") + 1);
                spec.outputs.push_back(item);
            }
        } else if (key == "engine") {
            if (value == "analytic") spec.engine = Engine::Analytic;
            else if (value == "montecarlo") spec.engine = Engine::MonteCarlo;
            else if (value == "both") spec.engine = Engine::Both;
            else spec_error("engine must be analytic, montecarlo or both");
        } else if (key == "mc.trials") {
            spec.mc_trials = parse_count(key, value);
        } else if (key == "mc.seed") {
            const double v = parse_number(key, value);
            if (!(v >= 0 && v == std::floor(v) && v < 1.8e19))
                spec_error("key 'mc.seed' expects a non-negative integer");
            spec.mc_seed = static_cast<std::uint64_t>(v);
        } else {
            spec_error("unknown key '" + key + "'");
        }
    }
    if (!doc.contains("schema_version")) spec_error("missing required key 'schema_version'");
    if (!has_axis1) spec_error("missing required key 'axis1.key'");
    if (spec.axis2 && spec.axis2->key.empty()) spec_error("missing required key 'axis2.key'");
    spec.validate();
    return spec;
}

SweepSpec SweepSpec::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sweep spec " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.parent_path());
}

void ResultTable::write_csv(std::ostream& out) const {
    auto write_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
    };
    write_row(header);
    for (const auto& row : rows) write_row(row);
}

std::size_t ResultTable::column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error("no column named '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> coverage_header() {
    return {"lambda_ch", "t_ch", "b_max_wh", "v", "p_e", "p_los", "p_cov_s", "p_cov"};
}

std::vector<std::string> coverage_row(const ScenarioConfig& cfg) {
    const CoverageResult r = coverage_total(cfg);
    return {format_number(cfg.lambda_ch_per_m2), format_number(cfg.t_ch_s),
            format_number(units::joules_to_wh(cfg.b_max_j)), format_number(cfg.v_mps),
            format_number(r.p_e), format_number(r.p_los), format_number(r.p_cov_s),
            format_number(r.p_cov)};
}

ResultTable run_sweep(const ConfigDocument& base, const SweepSpec& spec, unsigned workers) {
    spec.validate();
    const bool analytic = spec.engine != Engine::MonteCarlo;
    const bool mc = spec.engine != Engine::Analytic;

    ResultTable table;
    table.header.push_back(spec.axis1.key);
    if (spec.axis2) table.header.push_back(spec.axis2->key);
    for (const char* c : {"lambda_ch", "t_ch", "b_max_wh", "v"}) table.header.emplace_back(c);
    std::vector<std::string> mc_outputs;
    for (const auto& o : spec.outputs) {
        if (analytic) table.header.push_back(o);
        if (mc && o != "p_los") mc_outputs.push_back(o);
    }
    for (const auto& o : mc_outputs) {
        table.header.push_back("mc_" + o);
        table.header.push_back("se_" + o);
        if (analytic) table.header.push_back("z_" + o);
    }
    table.header.emplace_back("status");

    const std::size_t n2 = spec.axis2 ? spec.axis2->values.size() : 1;
    const std::size_t points = spec.axis1.values.size() * n2;
    const std::size_t value_cells = table.header.size() - (spec.axis2 ? 3 : 2);
    table.rows.resize(points);

    parallel_for(points, workers, [&](std::uint64_t i) {
        const double v1 = spec.axis1.values[i / n2];
        std::vector<std::string>& row = table.rows[i];
        row.push_back(format_number(v1));
        ConfigDocument doc = base;
        for (const auto& [key, value] : spec.overrides) doc.set(key, value);
        doc.set(spec.axis1.key, format_number(v1));
        if (spec.axis2) {
            const double v2 = spec.axis2->values[i % n2];
            row.push_back(format_number(v2));
            doc.set(spec.axis2->key, format_number(v2));
        }
        try {
            const ScenarioConfig cfg = load_config(doc);
            std::vector<std::string> cells = {
                format_number(cfg.lambda_ch_per_m2), format_number(cfg.t_ch_s),
                format_number(units::joules_to_wh(cfg.b_max_j)), format_number(cfg.v_mps)};
            CoverageResult r;
            if (analytic) {
                r = coverage_total(cfg);
                for (const auto& o : spec.outputs) cells.push_back(format_number(analytic_output(r, o)));
            }
            SimConfig sim;
            sim.trials = spec.mc_trials;
            sim.seed = spec.mc_seed;
            sim.workers = 1;
            for (const auto& o : mc_outputs) {
                const SimEstimate est = simulate_output(cfg, sim, o);
                cells.push_back(format_number(est.mean));
                cells.push_back(format_number(est.std_error));
                if (analytic) cells.push_back(z_score(analytic_output(r, o), est));
            }
            row.insert(row.end(), cells.begin(), cells.end());
            row.emplace_back("ok");
        } catch (const std::exception& e) {
            row.resize(row.size() + value_cells, "");
            row.emplace_back(std::string("error: ") + e.what());
        }
    });
    return table;
}

}  // namespace uavcov
