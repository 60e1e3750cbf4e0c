#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <string>

#include "support.hpp"
#include "uavcov/config_io.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/units.hpp"

using namespace uavcov;
using doctest::Approx;

namespace {

const std::string kBase = R"(schema_version = 1
uav.p_t_dbm = 21
uav.theta_b_deg = 30.8
uav.v_mps = 10.36
uav.h_ch_m = 100
uav.h_l_m = 80
link.f_c_mhz = 868
sensor.gamma_th_dbm = -30
sensor.g_r_dbi = 9
env.eta_los_db = 1.6034
env.eta_nlos_db = 29.6462
env.gamma = 27.1157
env.delta = 0.1232
battery.b_max_wh = 770
battery.t_ch_s = 3600
stations.lambda_ch_per_km2 = 1
service.e_pt_j = 75.536
)";

std::string with(const std::string& extra) { return kBase + extra; }

std::string without(const std::string& key) {
    std::string out;
    std::istringstream in(kBase);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + " ", 0) != 0) out += line + "\n";
    return out;
}

std::string error_of(const std::string& text) {
    try {
        load_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("parameter-table document converts units exactly") {
    const ScenarioConfig cfg = load_config(kBase);
    CHECK(cfg.p_t_w == Approx(0.1259).epsilon(1e-3));
    CHECK(cfg.p_t_w == std::pow(10.0, (21.0 - 30.0) / 10.0));
    CHECK(cfg.b_max_j == 2'772'000.0);
    CHECK(cfg.lambda_ch_per_m2 == 1e-6);
    CHECK(cfg.f_c_hz == 868e6);
    CHECK(cfg.gamma_th_w == Approx(1e-6).epsilon(1e-12));
    CHECK(cfg.xi_ch_w == 770.0);
    CHECK(cfg.h_ut_m() == 20.0);
    CHECK(cfg.coverage_mode == CoverageMode::PaperClosedForm);
    CHECK_FALSE(cfg.strict_paper_mode);
    CHECK(cfg.rectenna.eta_fixed() == 0.5);
}

TEST_CASE("document matches the built-in parameter table") {
    const ScenarioConfig a = load_config(kBase);
    const ScenarioConfig b = testing::calibrated();
    CHECK(a.g_t_linear == Approx(b.g_t_linear).epsilon(1e-15));
    CHECK(a.e_pt_j == b.e_pt_j);
    CHECK(a.eta_nlos_db == b.eta_nlos_db);
}

TEST_CASE("zero station density is an invariant violation") {
    const std::string text = without("stations.lambda_ch_per_km2") + "stations.lambda_ch_per_km2 = 0\n";
    const std::string err = error_of(text);
    CHECK(err.find("invariant violated") != std::string::npos);
    CHECK(err.find("lambda_ch > 0") != std::string::npos);
}

TEST_CASE("schema violations name the offending key") {
    CHECK(error_of(with("uav.colour = red\n")).find("'uav.colour'") != std::string::npos);
    CHECK(error_of(without("service.e_pt_j")).find("'service.e_pt_j'") != std::string::npos);
    CHECK(error_of(without("battery.t_ch_s")).find("'battery.t_ch_s'") != std::string::npos);
    CHECK(error_of(with("battery.xi_ch_w = fast\n")).find("'battery.xi_ch_w'") != std::string::npos);
    CHECK(error_of(with("uav.v_mps = 3\n")).find("duplicate key 'uav.v_mps'") != std::string::npos);
    CHECK(error_of("schema_version = 2\n").find("schema_version") != std::string::npos);
    CHECK(error_of(with("model.coverage_mode = exact\n")).find("model.coverage_mode") !=
          std::string::npos);
    CHECK(error_of(with("this line has no equals\n")).find("line") != std::string::npos);
}

TEST_CASE("exactly one of antenna gain and beamwidth") {
    CHECK(error_of(with("uav.g_t_dbi = 15\n")).find("exactly one") != std::string::npos);
    CHECK(error_of(without("uav.theta_b_deg")).find("exactly one") != std::string::npos);
    const ScenarioConfig cfg = load_config(without("uav.theta_b_deg") + "uav.g_t_dbi = 10\n");
    CHECK(cfg.theta_b_deg == Approx(54.77).epsilon(1e-4));
}

TEST_CASE("optional keys override defaults") {
    const ScenarioConfig cfg = load_config(with(
        "battery.xi_ch_w = 500\nlink.h_ut_m = 35\npropulsion.p0_w = 70\n"
        "model.coverage_mode = nonlinear\nmodel.strict_paper_mode = true\nevent.radius_m = 50\n"));
    CHECK(cfg.xi_ch_w == 500.0);
    CHECK(cfg.h_ut_m() == 35.0);
    CHECK(cfg.propulsion.p0_w == 70.0);
    CHECK(cfg.coverage_mode == CoverageMode::NonlinearRectenna);
    CHECK(cfg.strict_paper_mode);
    CHECK(cfg.event_radius_m == 50.0);
}

TEST_CASE("explicit rectenna coefficients") {
    const ScenarioConfig cfg = load_config(
        with("rectenna.p_th_dbm = -20\nrectenna.p_sat_dbm = 0\nrectenna.coeffs = 10, 0.3\n"));
    CHECK(cfg.rectenna.p_th() == Approx(1e-5));
    CHECK(cfg.rectenna.p_sat() == Approx(1e-3));
    CHECK(cfg.rectenna.efficiency(0.0) == 0.3);
    CHECK(error_of(with("rectenna.p_th_dbm = -20\n")).find("rectenna.coeffs") != std::string::npos);
    CHECK(error_of(with("rectenna.p_th_dbm = -20\nrectenna.p_sat_dbm = 0\nrectenna.coeffs = 3\n"))
              .find("[0, 1)") != std::string::npos);
}

TEST_CASE("rectenna table path is resolved relative to the config file") {
    const auto dir = std::filesystem::temp_directory_path() / "uavcov_config_io_test";
    std::filesystem::create_directories(dir / "sub");
    std::filesystem::copy_file(testing::standin_csv(), dir / "sub" / "curve.csv",
                               std::filesystem::copy_options::overwrite_existing);
    {
        std::ofstream out(dir / "scenario.cfg");
        out << with("rectenna.csv = sub/curve.csv\nrectenna.degree = 4\n");
    }
    const ScenarioConfig cfg = load_config_file(dir / "scenario.cfg");
    CHECK(cfg.rectenna.degree() == 4);
    CHECK(cfg.rectenna.p_th() == Approx(1e-5));
    CHECK(cfg.rectenna.p_sat() == Approx(units::dbm_to_watts(-5.0)));
    CHECK(error_of(with("rectenna.csv = sub/curve.csv\n")).find("rectenna.degree") !=
          std::string::npos);
}

TEST_CASE("shipped calibration loads without warnings at 36 dBm EIRP") {
    const ScenarioConfig cfg = load_config_file(testing::calibration_file());
    CHECK(config_warnings(cfg).empty());
    CHECK(units::watts_to_dbm(cfg.eirp_w()) == Approx(36.0).epsilon(0.05 / 36.0));
    CHECK(cfg.e_pt_j == testing::kCalibratedEpt);
    CHECK(cfg.rectenna.degree() == 4);
}

TEST_CASE("numbers accept infinity and reject junk") {
    CHECK(std::isinf(parse_number("k", "inf")));
    CHECK_THROWS_AS(parse_number("k", "12abc"), ConfigError);
    CHECK_THROWS_AS(parse_number("k", ""), ConfigError);
    CHECK_THROWS_AS(parse_number("k", "nan"), ConfigError);
}
