#include "uavcov/rectenna.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "uavcov/errors.hpp"
#include "uavcov/units.hpp"

namespace uavcov {

double rectify(const RectennaModel& m, double p_in) {
    if (!(p_in >= 0)) throw DomainError("input power must be non-negative");
    if (p_in < m.p_th()) return 0.0;
    const double p = std::min(p_in, m.p_sat());
    return m.efficiency(p) * p;
}

double invert_rectify(const RectennaModel& m, double target) {
    if (!(target > 0)) throw DomainError("rectified power target must be positive");
    const double top = std::isinf(m.p_sat())
                           ? (m.efficiency(0.0) > 0 ? std::numeric_limits<double>::infinity() : 0.0)
                           : rectify(m, m.p_sat());
    if (target > top) throw UnreachableError("target output exceeds the saturated rectenna output");

    if (rectify(m, m.p_th()) >= target) return m.p_th();

    double lo = m.p_th();
    double hi = m.p_sat();
    if (std::isinf(hi)) {
        hi = std::max({lo, target, std::numeric_limits<double>::min()});
        while (rectify(m, hi) < target) hi *= 2.0;
    }
    // rectify(lo) < target <= rectify(hi) throughout.
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (rectify(m, mid) >= target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

RectennaFit fit_rectenna(const std::vector<EfficiencySample>& samples, int degree,
                         double eta_fixed) {
    if (degree < 0) throw FitError("polynomial degree must be non-negative");
    const auto n_coeffs = static_cast<std::size_t>(degree) + 1;
    if (samples.size() < n_coeffs) {
        std::ostringstream msg;
        msg << "underdetermined fit: " << samples.size() << " samples for " << n_coeffs
            << " coefficients";
        throw FitError(msg.str());
    }
    double p_lo = std::numeric_limits<double>::infinity();
    double p_hi = -p_lo;
    for (const auto& s : samples) {
        if (!(s.power_w >= 0) || !std::isfinite(s.power_w))
            throw FitError("sample powers must be finite and non-negative");
        if (!(s.efficiency >= 0 && s.efficiency < 1))
            throw FitError("sample efficiencies must lie in [0, 1)");
        p_lo = std::min(p_lo, s.power_w);
        p_hi = std::max(p_hi, s.power_w);
    }
    if (!(p_hi > p_lo)) throw FitError("underdetermined fit: samples span a single power");

    // Fit in the normalised variable u = P / p_hi, then rescale.
    const auto rows = static_cast<Eigen::Index>(samples.size());
    const auto cols = static_cast<Eigen::Index>(n_coeffs);
    Eigen::MatrixXd vander(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double u = samples[i].power_w / p_hi;
        double pw = 1.0;
        for (Eigen::Index k = cols - 1; k >= 0; --k) {
            vander(i, k) = pw;
            pw *= u;
        }
        rhs(i) = samples[i].efficiency;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
    if (qr.rank() < cols) {
        std::ostringstream msg;
        msg << "underdetermined fit: " << qr.rank() << " distinct constraints for " << cols
            << " coefficients";
        throw FitError(msg.str());
    }
    const Eigen::VectorXd c = qr.solve(rhs);

    std::vector<double> coeffs(n_coeffs);
    for (Eigen::Index k = 0; k < cols; ++k) {
        const int power = static_cast<int>(cols - 1 - k);
        coeffs[k] = c(k) / std::pow(p_hi, power);
    }

    auto eval = [&](double p) {
        double acc = 0.0;
        for (double ck : coeffs) acc = acc * p + ck;
        return acc;
    };

    // Report the worst invariant violation before handing over to the model.
    constexpr int kGrid = 1000;
    double worst_drop = 0.0, worst_drop_at = 0.0;
    double worst_eff = 0.0, worst_eff_at = 0.0;
    double prev = -1.0;
    for (int i = 0; i < kGrid; ++i) {
        const double p = p_lo + (p_hi - p_lo) * i / (kGrid - 1);
        const double e = eval(p);
        const double excess =
            e < 0 ? -e : (e >= 1 ? std::max(e - 1, std::numeric_limits<double>::min()) : 0.0);
        if (excess > worst_eff) {
            worst_eff = excess;
            worst_eff_at = p;
        }
        const double out = e * p;
        if (prev >= 0 && prev - out > worst_drop) {
            worst_drop = prev - out;
            worst_drop_at = p;
        }
        prev = out;
    }
    if (worst_eff > 0) {
        std::ostringstream msg;
        msg << "fitted efficiency leaves [0, 1); worst at " << worst_eff_at << " W (efficiency "
            << eval(worst_eff_at) << ")";
        throw FitError(msg.str());
    }
    if (worst_drop > 1e-12 * std::abs(eval(p_hi) * p_hi)) {
        std::ostringstream msg;
        msg << "fitted output is not monotone; worst drop of " << worst_drop << " W at "
            << worst_drop_at << " W";
        throw FitError(msg.str());
    }

    RectennaFit fit{RectennaModel(p_lo, p_hi, coeffs, eta_fixed), 0.0};
    for (const auto& s : samples)
        fit.max_abs_residual =
            std::max(fit.max_abs_residual, std::abs(fit.model.efficiency(s.power_w) - s.efficiency));
    return fit;
}

std::vector<EfficiencySample> read_efficiency_csv(std::istream& in) {
    std::vector<EfficiencySample> out;
    std::string line;
    bool header_seen = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!header_seen) {
            std::string h = line.substr(first);
            h.erase(std::remove_if(h.begin(), h.end(), [](char ch) { return ch == ' ' || ch == '\r'; }),
                    h.end());
            if (h != "power_dbm,efficiency")
                throw ConfigError("rectenna CSV header must be 'power_dbm,efficiency' (line " +
                                  std::to_string(line_no) + ")");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        double dbm = 0, eff = 0;
        char comma = 0;
        if (!(row >> dbm >> comma >> eff) || comma != ',')
            throw ConfigError("malformed rectenna CSV row at line " + std::to_string(line_no));
        out.push_back({units::dbm_to_watts(dbm), eff});
    }
    if (!header_seen) throw ConfigError("rectenna CSV is empty");
    return out;
}

std::vector<EfficiencySample> read_efficiency_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open rectenna CSV " + path.string());
    return read_efficiency_csv(in);
}

std::string rectenna_config_block(const RectennaModel& m) {
    std::ostringstream out;
    out.precision(17);
    out << "rectenna.p_th_dbm = " << units::watts_to_dbm(m.p_th()) << "\n";
    out << "rectenna.p_sat_dbm = " << units::watts_to_dbm(m.p_sat()) << "\n";
    out << "rectenna.coeffs = ";
    const auto c = m.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? ", " : "") << c[i];
    out << "\n";
    out << "rectenna.eta_fixed = " << m.eta_fixed() << "\n";
    return out.str();
}

}  // namespace uavcov
