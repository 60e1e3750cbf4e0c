#include "uavcov/config_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "uavcov/errors.hpp"
#include "uavcov/rectenna.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void schema_error(const std::string& what) {
    throw ConfigError("schema violation: " + what);
}

class Reader {
public:
    explicit Reader(const ConfigDocument& doc) : doc_(doc) {}

    double number(const std::string& key) {
        const auto v = doc_.get(key);
        if (!v) schema_error("missing required key '" + key + "'");
        return parse_number(key, *v);
    }
    double number(const std::string& key, double fallback) {
        const auto v = doc_.get(key);
        return v ? parse_number(key, *v) : fallback;
    }
    std::optional<double> maybe(const std::string& key) {
        const auto v = doc_.get(key);
        if (!v) return std::nullopt;
        return parse_number(key, *v);
    }
    std::vector<double> list(const std::string& key) {
        const auto v = doc_.get(key);
        if (!v) schema_error("missing required key '" + key + "'");
        std::vector<double> out;
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(parse_number(key, trim(item)));
        if (out.empty()) schema_error("key '" + key + "' expects a comma-separated list");
        return out;
    }
    bool boolean(const std::string& key, bool fallback) {
        const auto v = doc_.get(key);
        if (!v) return fallback;
        if (*v == "true") return true;
        if (*v == "false") return false;
        schema_error("key '" + key + "' expects true or false");
    }

private:
    const ConfigDocument& doc_;
};

RectennaModel load_rectenna(const ConfigDocument& doc, Reader& rd) {
    const double eta_fixed = rd.number("rectenna.eta_fixed", 0.5);
    if (const auto csv = doc.get("rectenna.csv")) {
        if (doc.contains("rectenna.coeffs"))
            schema_error("give either 'rectenna.csv' or 'rectenna.coeffs', not both");
        const double degree = rd.number("rectenna.degree");
        if (degree != std::floor(degree) || degree < 0)
            schema_error("key 'rectenna.degree' expects a non-negative integer");
        std::filesystem::path path(*csv);
        if (path.is_relative()) path = doc.base_dir() / path;
        try {
            return fit_rectenna(read_efficiency_csv(path), static_cast<int>(degree), eta_fixed).model;
        } catch (const FitError& e) {
            throw ConfigError(std::string("rectenna fit rejected: ") + e.what());
        }
    }
    if (doc.contains("rectenna.coeffs")) {
        const double p_th = units::dbm_to_watts(rd.number("rectenna.p_th_dbm"));
        const double p_sat = units::dbm_to_watts(rd.number("rectenna.p_sat_dbm"));
        return RectennaModel(p_th, p_sat, rd.list("rectenna.coeffs"), eta_fixed);
    }
    for (const char* key : {"rectenna.p_th_dbm", "rectenna.p_sat_dbm", "rectenna.degree"})
        if (doc.contains(key))
            schema_error(std::string("key '") + key + "' needs 'rectenna.coeffs' or 'rectenna.csv'");
    return RectennaModel::constant(eta_fixed);
}

}  // namespace

ConfigDocument ConfigDocument::parse(std::string_view text, std::filesystem::path base_dir) {
    ConfigDocument doc;
    doc.base_dir_ = std::move(base_dir);
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            schema_error("line " + std::to_string(line_no) + " is not 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) schema_error("empty key on line " + std::to_string(line_no));
        if (!doc.entries_.emplace(key, value).second)
            schema_error("duplicate key '" + key + "'");
    }
    return doc;
}

ConfigDocument ConfigDocument::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.parent_path());
}

std::optional<std::string> ConfigDocument::get(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

const std::vector<std::string>& schema_keys() {
    static const std::vector<std::string> keys = {
        "schema_version",
        "uav.p_t_dbm", "uav.g_t_dbi", "uav.theta_b_deg", "uav.v_mps", "uav.h_ch_m", "uav.h_l_m",
        "link.f_c_mhz", "link.h_ut_m",
        "sensor.gamma_th_dbm", "sensor.g_r_dbi",
        "env.eta_los_db", "env.eta_nlos_db", "env.gamma", "env.delta",
        "battery.b_max_wh", "battery.xi_ch_w", "battery.t_ch_s",
        "stations.lambda_ch_per_km2",
        "service.e_pt_j",
        "event.radius_m",
        "propulsion.p0_w", "propulsion.p_i_w", "propulsion.u_tip_mps", "propulsion.v0_mps",
        "propulsion.d0", "propulsion.rho", "propulsion.solidity", "propulsion.disc_area_m2",
        "rectenna.p_th_dbm", "rectenna.p_sat_dbm", "rectenna.coeffs", "rectenna.eta_fixed",
        "rectenna.csv", "rectenna.degree",
        "model.coverage_mode", "model.strict_paper_mode",
    };
    return keys;
}

bool is_schema_key(std::string_view key) {
    const auto& keys = schema_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double parse_number(std::string_view key, std::string_view text) {
    const std::string s(text);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || std::isnan(v))
        schema_error("key '" + std::string(key) + "' expects a number, got '" + s + "'");
    return v;
}

ScenarioConfig load_config(const ConfigDocument& doc) {
    for (const auto& [key, value] : doc.entries())
        if (!is_schema_key(key)) schema_error("unknown key '" + key + "'");

    Reader rd(doc);
    const double version = rd.number("schema_version");
    if (version != kSchemaVersion)
        schema_error("unsupported schema_version " + *doc.get("schema_version"));

    ScenarioConfig cfg;
    cfg.p_t_w = units::dbm_to_watts(rd.number("uav.p_t_dbm"));

    const auto g_t_dbi = rd.maybe("uav.g_t_dbi");
    const auto theta = rd.maybe("uav.theta_b_deg");
    if (g_t_dbi.has_value() == theta.has_value())
        schema_error("exactly one of 'uav.g_t_dbi' and 'uav.theta_b_deg' must be given");
    try {
        if (g_t_dbi) {
            cfg.g_t_linear = units::db_to_linear(*g_t_dbi);
            cfg.theta_b_deg = beamwidth_from_gain(cfg.g_t_linear);
        } else {
            cfg.theta_b_deg = *theta;
            cfg.g_t_linear = gain_from_beamwidth(*theta);
        }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invariant violated: ") + e.what());
    }

    cfg.f_c_hz = units::mhz_to_hz(rd.number("link.f_c_mhz"));
    cfg.h_ut_override_m = rd.maybe("link.h_ut_m");
    cfg.gamma_th_w = units::dbm_to_watts(rd.number("sensor.gamma_th_dbm"));
    cfg.g_r_linear = units::db_to_linear(rd.number("sensor.g_r_dbi"));
    cfg.eta_los_db = rd.number("env.eta_los_db");
    cfg.eta_nlos_db = rd.number("env.eta_nlos_db");
    cfg.env_gamma = rd.number("env.gamma");
    cfg.env_delta = rd.number("env.delta");
    cfg.b_max_j = units::wh_to_joules(rd.number("battery.b_max_wh"));
    cfg.xi_ch_w = rd.number("battery.xi_ch_w", 770.0);
    cfg.t_ch_s = rd.number("battery.t_ch_s");
    cfg.v_mps = rd.number("uav.v_mps");
    cfg.h_ch_m = rd.number("uav.h_ch_m");
    cfg.h_l_m = rd.number("uav.h_l_m");
    cfg.lambda_ch_per_m2 = units::per_km2_to_per_m2(rd.number("stations.lambda_ch_per_km2"));
    cfg.e_pt_j = rd.number("service.e_pt_j");
    cfg.event_radius_m = rd.number("event.radius_m", 0.0);

    PropulsionModel& p = cfg.propulsion;
    p.p0_w = rd.number("propulsion.p0_w", p.p0_w);
    p.p_i_w = rd.number("propulsion.p_i_w", p.p_i_w);
    p.u_tip_mps = rd.number("propulsion.u_tip_mps", p.u_tip_mps);
    p.v0_mps = rd.number("propulsion.v0_mps", p.v0_mps);
    p.d0 = rd.number("propulsion.d0", p.d0);
    p.rho = rd.number("propulsion.rho", p.rho);
    p.solidity = rd.number("propulsion.solidity", p.solidity);
    p.disc_area_m2 = rd.number("propulsion.disc_area_m2", p.disc_area_m2);

    cfg.rectenna = load_rectenna(doc, rd);

    if (const auto mode = doc.get("model.coverage_mode")) {
        const auto parsed = parse_coverage_mode(*mode);
        if (!parsed) schema_error("key 'model.coverage_mode' expects paper or nonlinear");
        cfg.coverage_mode = *parsed;
    }
    cfg.strict_paper_mode = rd.boolean("model.strict_paper_mode", false);

    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(std::string_view text, std::filesystem::path base_dir) {
    return load_config(ConfigDocument::parse(text, std::move(base_dir)));
}

ScenarioConfig load_config_file(const std::filesystem::path& path) {
    return load_config(ConfigDocument::from_file(path));
}

}  // namespace uavcov
