#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uavcov {

/// Rotary-wing propulsion coefficients. Blade-profile and induced hover powers
/// are stored as aggregates; their rotor-level primitives are not modelled.
struct PropulsionModel {
    double p0_w = 79.86;       ///< blade profile power in hover
    double p_i_w = 88.62;      ///< induced power in hover
    double u_tip_mps = 120.0;  ///< rotor blade tip speed
    double v0_mps = 4.03;      ///< mean rotor-induced velocity in hover
    double d0 = 0.6;           ///< fuselage drag ratio
    double rho = 1.225;        ///< air density, kg/m^3
    double solidity = 0.05;    ///< rotor solidity
    double disc_area_m2 = 0.503;

    /// Throws ConfigError unless every field is strictly positive.
    void validate() const;
};

/// RF-to-DC conversion: efficiency is a polynomial in the intercepted power
/// (watts), gated by a sensitivity floor and clamped at saturation.
///
/// Coefficients are stored highest power first, so for w coefficients
/// efficiency(P) = c[0]*P^(w-1) + ... + c[w-2]*P + c[w-1].
class RectennaModel {
public:
    /// Constant efficiency 0.5, no sensitivity floor, no saturation.
    RectennaModel();

    /// Throws ConfigError if the efficiency leaves [0, 1) or the output
    /// efficiency(P)*P decreases anywhere on a 1000-point grid over
    /// [p_th, p_sat]. An infinite p_sat is only accepted for a constant
    /// efficiency polynomial.
    RectennaModel(double p_th_w, double p_sat_w, std::vector<double> coeffs, double eta_fixed);

    static RectennaModel constant(double eta, double p_th_w = 0.0,
                                  double p_sat_w = std::numeric_limits<double>::infinity());

    double p_th() const { return p_th_; }
    double p_sat() const { return p_sat_; }
    double eta_fixed() const { return eta_fixed_; }
    std::span<const double> coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Polynomial efficiency at p_in, no gating or clamping.
    double efficiency(double p_in) const;

    /// Same model with a different fixed efficiency.
    RectennaModel with_eta_fixed(double eta) const;

private:
    void validate() const;

    double p_th_;
    double p_sat_;
    std::vector<double> coeffs_;
    double eta_fixed_;
};

enum class CoverageMode { PaperClosedForm, NonlinearRectenna };

std::string_view to_string(CoverageMode mode);
std::optional<CoverageMode> parse_coverage_mode(std::string_view text);

/// Full scenario in SI units. Both antenna descriptions are stored; exactly
/// one of them is supplied by the user and the other is derived.
struct ScenarioConfig {
    double p_t_w = 0.0;          ///< UAV conducted transmit power
    double g_t_linear = 0.0;     ///< UAV antenna gain
    double theta_b_deg = 0.0;    ///< UAV antenna half-power beamwidth
    double f_c_hz = 0.0;
    double gamma_th_w = 0.0;     ///< minimum rectified power for sensor activation
    double g_r_linear = 0.0;     ///< sensor antenna gain
    double eta_los_db = 0.0;     ///< additional LoS loss
    double eta_nlos_db = 0.0;    ///< additional NLoS loss
    double env_gamma = 0.0;      ///< LoS-probability environment constants
    double env_delta = 0.0;
    double b_max_j = 0.0;
    double xi_ch_w = 770.0;      ///< recharge rate of the station pad
    double t_ch_s = 0.0;
    double v_mps = 0.0;
    double h_ch_m = 0.0;         ///< cruise / station altitude
    double h_l_m = 0.0;          ///< descent to the hover point
    std::optional<double> h_ut_override_m;
    double lambda_ch_per_m2 = 0.0;
    double e_pt_j = 0.0;         ///< WPT energy budget per mission
    double event_radius_m = 0.0; ///< informational only
    RectennaModel rectenna;
    PropulsionModel propulsion;
    CoverageMode coverage_mode = CoverageMode::PaperClosedForm;
    bool strict_paper_mode = false;

    /// Hover altitude above the sensors, h_ch - h_l unless overridden.
    double h_ut_m() const { return h_ut_override_m.value_or(h_ch_m - h_l_m); }
    double eirp_w() const { return p_t_w * g_t_linear; }

    /// Checks every scenario invariant; throws ConfigError naming the first
    /// violated one.
    void validate() const;

    /// Parameter-table scenario: 21 dBm, 30.8 deg beam, 868 MHz, 1 uW
    /// threshold, 9 dBi sensor, high-rise urban, 770 Wh charged for 3600 s,
    /// 10.36 m/s, 100 m / 80 m altitudes, 1e-6 stations per m^2.
    /// The WPT energy is never published and must be given.
    static ScenarioConfig table_one(double e_pt_j);
};

/// Pencil-beam approximation G = 30000 / theta^2 (theta in degrees).
double gain_from_beamwidth(double theta_b_deg);
double beamwidth_from_gain(double g_t_linear);

struct EirpReport {
    double eirp_w = 0.0;
    bool conducted_power_ok = true;  ///< p_t <= 1 W
    bool eirp_ok = true;             ///< p_t * g_t <= 4 W
    bool compliant() const { return conducted_power_ok && eirp_ok; }
};

inline constexpr double kMaxConductedPowerW = 1.0;
inline constexpr double kMaxEirpW = 4.0;

EirpReport check_eirp_compliance(double p_t_w, double g_t_linear);

/// Human-readable warnings for a validated config (currently FCC limits).
std::vector<std::string> config_warnings(const ScenarioConfig& cfg);

}  // namespace uavcov
