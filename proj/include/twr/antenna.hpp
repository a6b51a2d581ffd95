#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twr/constants.hpp"

namespace twr {

/// Parametric antenna: a boresight gain table over frequency plus a
/// cos^n(theta) pattern shape floored at the backlobe level, so that
/// gain(0) - gain(pi) equals the front-to-back ratio by construction.
struct AntennaModel {
    std::string name;
    std::vector<std::pair<double, double>> gain_table;  // (freq Hz, gain dBi), freq ascending
    double fbr_db = 0.0;
    double directivity_dbi = 0.0;
    double pattern_exponent = 0.0;  // n in cos^n, solved from directivity
    std::string notes;              // assumptions baked into the preset
};

struct GainSample {
    double dbi = 0.0;
    bool freq_clamped = false;  // query fell outside the table span
};

/// Max-gain band summary used by the figure-of-merit calculation. The center
/// frequency is a supplied value (design frequency), not (f_low+f_high)/2.
struct BandSummary {
    double f_low_hz = 0.0;
    double f_high_hz = 0.0;
    double f_center_hz = 0.0;
    double gain_max_dbi = 0.0;
};

/// Exponentially tapered slot geometry. The curve parameter t runs along the
/// slot axis in mm; inner and outer edges share the feed width and aperture
/// offset but have their own exponential rates.
struct VivaldiGeometry {
    double substrate_width_mm = 150.0;   // W, sets the aperture cutoff
    double substrate_length_mm = 185.0;  // L
    double feed_width_mm = 3.3;          // fw
    double aperture_offset_mm = 40.0;    // W1
    double inner_rate_per_mm = 0.027;    // a1
    double outer_rate_per_mm = 0.16;     // a2
    double inner_t_min_mm = 5.0;
    double inner_t_max_mm = 148.0;
    double outer_t_min_mm = 5.0;
    double outer_t_max_mm = 29.0;
};

inline void validate_model(const AntennaModel& m) {
    if (m.gain_table.empty()) throw std::invalid_argument("antenna model has an empty gain table");
    for (size_t i = 1; i < m.gain_table.size(); ++i)
        if (m.gain_table[i].first <= m.gain_table[i - 1].first)
            throw std::invalid_argument("antenna gain table frequencies must be strictly increasing");
    if (m.fbr_db < 0.0) throw std::invalid_argument("front-to-back ratio must be >= 0 dB");
}

/// Boresight gain at f: linear interpolation inside the table span, clamped
/// (and flagged) at the edges.
inline GainSample boresight_gain(const AntennaModel& m, double freq_hz) {
    validate_model(m);
    const auto& t = m.gain_table;
    if (freq_hz <= t.front().first) return {t.front().second, freq_hz < t.front().first};
    if (freq_hz >= t.back().first) return {t.back().second, freq_hz > t.back().first};
    auto hi = std::lower_bound(t.begin(), t.end(), freq_hz,
                               [](const auto& row, double f) { return row.first < f; });
    auto lo = hi - 1;
    const double w = (freq_hz - lo->first) / (hi->first - lo->first);
    return {lo->second + w * (hi->second - lo->second), false};
}

/// Gain (dBi) at angle theta off boresight: table gain shaped by
/// max(cos^n(theta), backlobe floor). theta in [0, pi].
inline double pattern_gain(const AntennaModel& m, double freq_hz, double theta_rad,
                           bool* freq_clamped = nullptr) {
    if (theta_rad < 0.0 || theta_rad > kPi)
        throw std::out_of_range("pattern_gain: theta must be in [0, pi]");
    const GainSample g0 = boresight_gain(m, freq_hz);
    if (freq_clamped) *freq_clamped = g0.freq_clamped;
    const double backlobe = db_to_linear(-m.fbr_db);
    const double c = std::max(std::cos(theta_rad), 0.0);
    const double shape = std::max(std::pow(c, m.pattern_exponent), backlobe);
    return g0.dbi + linear_to_db(shape);
}

/// Figure of merit: linear max gain times fractional bandwidth referred to
/// the stated center frequency.
inline double figure_of_merit(const BandSummary& b) {
    if (b.f_center_hz <= 0.0) throw std::invalid_argument("figure_of_merit: center frequency must be > 0");
    if (b.f_low_hz >= b.f_high_hz)
        throw std::invalid_argument("figure_of_merit: band must satisfy f_low < f_high");
    return db_to_linear(b.gain_max_dbi) * (b.f_high_hz - b.f_low_hz) / b.f_center_hz;
}

/// Inner taper edge X(t) = fw - 0.5*fw*e^(a1*(t-5)) + W1/2, Y(t) = t.
inline std::pair<double, double> vivaldi_inner_edge(const VivaldiGeometry& g, double t_mm) {
    if (t_mm < g.inner_t_min_mm || t_mm > g.inner_t_max_mm)
        throw std::out_of_range("vivaldi_inner_edge: t outside the inner parameter range");
    const double x = g.feed_width_mm -
                     0.5 * g.feed_width_mm * std::exp(g.inner_rate_per_mm * (t_mm - g.inner_t_min_mm)) +
                     0.5 * g.aperture_offset_mm;
    return {x, t_mm};
}

/// Outer taper edge X(t) = -0.5*fw*e^(a2*(t-5)) + W1/2, Y(t) = t.
inline std::pair<double, double> vivaldi_outer_edge(const VivaldiGeometry& g, double t_mm) {
    if (t_mm < g.outer_t_min_mm || t_mm > g.outer_t_max_mm)
        throw std::out_of_range("vivaldi_outer_edge: t outside the outer parameter range");
    const double x = -0.5 * g.feed_width_mm * std::exp(g.outer_rate_per_mm * (t_mm - g.outer_t_min_mm)) +
                     0.5 * g.aperture_offset_mm;
    return {x, t_mm};
}

/// Lower cutoff of a tapered-slot aperture of width W: lambda_cutoff = 2W.
inline double aperture_cutoff_hz(double aperture_width_m) {
    if (aperture_width_m <= 0.0)
        throw std::invalid_argument("aperture_cutoff: width must be > 0");
    return kSpeedOfLight / (2.0 * aperture_width_m);
}

struct DirectorGain {
    double dbi = 0.0;
    bool extrapolated = false;  // beyond the simulated 12-director point
};

/// Design-stage gain at 2.4 GHz versus director count. Exact table values at
/// 0/2/6/12 directors; piecewise-linear model elsewhere, extrapolating the
/// last segment above 12.
inline DirectorGain director_gain_preset(double n_directors) {
    if (n_directors < 0.0) throw std::invalid_argument("director count must be >= 0");
    static const std::vector<std::pair<double, double>> table = {
        {0.0, 3.09}, {2.0, 4.90}, {6.0, 6.80}, {12.0, 8.62}};
    if (n_directors > table.back().first) {
        const auto& a = table[table.size() - 2];
        const auto& b = table.back();
        const double slope = (b.second - a.second) / (b.first - a.first);
        return {b.second + slope * (n_directors - b.first), true};
    }
    auto hi = std::lower_bound(table.begin(), table.end(), n_directors,
                               [](const auto& row, double n) { return row.first < n; });
    if (hi->first == n_directors) return {hi->second, false};
    auto lo = hi - 1;
    const double w = (n_directors - lo->first) / (hi->first - lo->first);
    return {lo->second + w * (hi->second - lo->second), false};
}

// Beam solid angle of the cos^n-with-backlobe shape, peak normalized to 1:
//   I(n) = (1 - b^((n+1)/n)) / (n+1) + b * (1 + b^(1/n)),  b = backlobe level.
// Azimuthally symmetric, so directivity = 2 / I(n).
inline double pattern_shape_integral(double n, double backlobe_linear) {
    const double b = backlobe_linear;
    if (n <= 0.0) return 1.0 + b;  // constant front hemisphere + backlobe
    const double front = (1.0 - std::pow(b, (n + 1.0) / n)) / (n + 1.0);
    const double back = b * (1.0 + std::pow(b, 1.0 / n));
    return front + back;
}

inline double pattern_directivity_dbi(double n, double fbr_db) {
    return linear_to_db(2.0 / pattern_shape_integral(n, db_to_linear(-fbr_db)));
}

/// Solve for the cos^n exponent whose pattern directivity matches the target.
/// Directivity grows monotonically with n from ~3 dBi up to fbr_db + 3 dB, so
/// plain bisection suffices.
inline double solve_pattern_exponent(double directivity_dbi, double fbr_db) {
    const double b = db_to_linear(-fbr_db);
    const double target = db_to_linear(directivity_dbi);
    double lo = 0.0, hi = 1.0;
    while (2.0 / pattern_shape_integral(hi, b) < target) {
        hi *= 2.0;
        if (hi > 1e9)
            throw std::invalid_argument(
                "pattern exponent: directivity unreachable for the given front-to-back ratio");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (2.0 / pattern_shape_integral(mid, b) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline AntennaModel finalize_model(AntennaModel m) {
    validate_model(m);
    m.pattern_exponent = solve_pattern_exponent(m.directivity_dbi, m.fbr_db);
    return m;
}

inline AntennaModel antenna_preset(const std::string& name) {
    AntennaModel m;
    m.name = name;
    if (name == "horn") {
        // COTS pyramidal horn. The 30 dB front-to-back ratio is an assumed
        // figure; only the 15 dBi directivity is quoted for this unit.
        m.gain_table = {{1.0e9, 15.0}, {3.0e9, 15.0}};
        m.fbr_db = 30.0;
        m.directivity_dbi = 15.0;
        m.notes = "fbr assumed (not quoted for this unit); flat gain";
        return finalize_model(std::move(m));
    }
    if (name == "vivaldi") {
        // Two-director build: 6.8-8.8 dBi bare plus 1 dB from the directors,
        // spread across the radar band.
        m.gain_table = {{2.05e9, 7.8}, {2.6e9, 9.8}};
        m.fbr_db = 14.44;
        m.directivity_dbi = 10.44;
        m.notes = "gain endpoints mapped to the 2.05-2.6 GHz radar band";
        return finalize_model(std::move(m));
    }
    if (name == "quasi-yagi") {
        // Measured 8.7 dBi at 2.4 GHz; band endpoints from the design sweep.
        m.gain_table = {{1.87e9, 7.8}, {2.4e9, 8.7}, {2.91e9, 9.8}};
        m.fbr_db = 25.76;
        m.directivity_dbi = 9.02;
        return finalize_model(std::move(m));
    }
    throw std::invalid_argument("unknown antenna preset: " + name);
}

/// Load a gain table from CSV with header `freq_hz,gain_dbi`. FBR and
/// directivity are not part of the file and default to an isotropic shape
/// unless the caller fills them in before finalize_model.
inline AntennaModel load_gain_table_csv(const std::string& path, double fbr_db = 0.0,
                                        double directivity_dbi = 0.0) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open gain table: " + path);
    AntennaModel m;
    m.name = path;
    m.fbr_db = fbr_db;
    m.directivity_dbi = directivity_dbi;
    std::string line;
    if (!std::getline(in, line) || line.rfind("freq_hz,gain_dbi", 0) != 0)
        throw std::runtime_error("gain table " + path + ": expected header 'freq_hz,gain_dbi'");
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f, g;
        if (!std::getline(row, f, ',') || !std::getline(row, g))
            throw std::runtime_error("gain table " + path + ": bad row at line " +
                                     std::to_string(lineno));
        m.gain_table.emplace_back(std::stod(f), std::stod(g));
    }
    return finalize_model(std::move(m));
}

}  // namespace twr
