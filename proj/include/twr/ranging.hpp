#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twr/constants.hpp"
#include "twr/scene.hpp"
#include "twr/spectro.hpp"

namespace twr {

struct Peak {
    double freq_hz = 0.0;
    double power_dbm = 0.0;
};

/// Per time-row local maxima above threshold, strongest first. Ties break
/// toward the lower frequency so runs are reproducible.
struct PeakList {
    std::vector<std::vector<Peak>> rows;
    std::vector<double> row_times_s;
    double bin_spacing_hz = 0.0;
    std::vector<double> freq_axis_hz;
};

inline PeakList extract_peaks(const SpectrogramGrid& g, double threshold_dbm,
                              double min_separation_hz) {
    if (g.freq_axis_hz.size() < 3)
        throw std::invalid_argument("extract_peaks: grid needs at least 3 frequency points");
    const double bin = g.freq_axis_hz[1] - g.freq_axis_hz[0];
    if (min_separation_hz < bin)
        throw std::invalid_argument("extract_peaks: min_separation below the grid bin spacing");

    PeakList peaks;
    peaks.rows.resize(g.power_dbm.size());
    peaks.row_times_s = g.time_axis_s;
    peaks.bin_spacing_hz = bin;
    peaks.freq_axis_hz = g.freq_axis_hz;

    std::vector<Peak> cand;
    for (std::size_t r = 0; r < g.power_dbm.size(); ++r) {
        const auto& row = g.power_dbm[r];
        cand.clear();
        for (std::size_t j = 1; j + 1 < row.size(); ++j) {
            if (row[j] < threshold_dbm) continue;
            if (row[j] > row[j - 1] && row[j] > row[j + 1])
                cand.push_back({g.freq_axis_hz[j], row[j]});
        }
        // strongest first; greedy separation pruning
        std::sort(cand.begin(), cand.end(), [](const Peak& a, const Peak& b) {
            if (a.power_dbm != b.power_dbm) return a.power_dbm > b.power_dbm;
            return a.freq_hz < b.freq_hz;
        });
        auto& kept = peaks.rows[r];
        for (const Peak& p : cand) {
            bool clear = true;
            for (const Peak& k : kept)
                if (std::abs(k.freq_hz - p.freq_hz) < min_separation_hz) {
                    clear = false;
                    break;
                }
            if (clear) kept.push_back(p);
        }
    }
    return peaks;
}

/// Beat-frequency range estimate d = (c*f_b/s - d0) / 2. Negative distances
/// are flagged rather than clamped so calibration problems stay visible.
struct RangeEstimate {
    double beat_hz = 0.0;
    double distance_m = 0.0;
    double d0_used_m = 0.0;
    std::string label;
    bool negative = false;
};

inline RangeEstimate distance_from_beat(double beat_hz, double slope_hz_per_s,
                                        const CableRun& cable, std::string label = {}) {
    if (slope_hz_per_s <= 0.0)
        throw std::invalid_argument("distance_from_beat: slope must be > 0");
    RangeEstimate e;
    e.beat_hz = beat_hz;
    e.d0_used_m = effective_cable_length(cable);
    e.distance_m = 0.5 * (kSpeedOfLight * beat_hz / slope_hz_per_s - e.d0_used_m);
    e.label = std::move(label);
    e.negative = e.distance_m < 0.0;
    return e;
}

/// Least-squares cable constant from (beat, true distance) pairs; with the
/// linear model this reduces to the mean of per-pair residuals.
inline double calibrate_d0(const std::vector<std::pair<double, double>>& beat_distance_pairs,
                           double slope_hz_per_s) {
    if (beat_distance_pairs.empty())
        throw std::invalid_argument("calibrate_d0: need at least one (f_b, d) pair");
    double acc = 0.0;
    for (const auto& [beat_hz, d_true] : beat_distance_pairs)
        acc += kSpeedOfLight * beat_hz / slope_hz_per_s - 2.0 * d_true;
    return acc / static_cast<double>(beat_distance_pairs.size());
}

struct StaticRidge {
    double freq_hz = 0.0;   // refined over the rows that peaked here
    double distance_m = 0.0;
    double persistence = 0.0;  // fraction of rows with a peak within one bin
};

/// Moving-target trace: the strongest non-static peak per row mapped to
/// distance, with the farthest sample as summary.
struct WalkerTrack {
    bool mover_detected = false;
    std::vector<std::pair<double, double>> samples;  // (t, d)
    double beat_max_hz = 0.0;
    double distance_max_m = 0.0;
    std::vector<StaticRidge> static_ridges;
};

/// Separate persistent (static) ridges from a mover. A display bin counts as
/// static when more than `persistence` of rows have a peak within one bin of
/// it; among the remaining peaks the strongest per row is taken as the mover.
inline WalkerTrack track_walker(const PeakList& peaks, double slope_hz_per_s,
                                const CableRun& cable, double persistence = 0.8) {
    if (peaks.rows.empty()) throw std::invalid_argument("track_walker: empty peak list");
    const double bin = peaks.bin_spacing_hz;
    const double f0 = peaks.freq_axis_hz.front();
    const std::size_t n_bins = peaks.freq_axis_hz.size();
    const std::size_t n_rows = peaks.rows.size();

    std::vector<std::size_t> hits(n_bins, 0);
    for (const auto& row : peaks.rows) {
        for (const Peak& p : row) {
            const std::ptrdiff_t j = std::lround((p.freq_hz - f0) / bin);
            for (std::ptrdiff_t k = j - 1; k <= j + 1; ++k)
                if (k >= 0 && static_cast<std::size_t>(k) < n_bins)
                    ++hits[static_cast<std::size_t>(k)];
        }
    }
    std::vector<bool> is_static(n_bins, false);
    for (std::size_t j = 0; j < n_bins; ++j)
        is_static[j] = static_cast<double>(hits[j]) >
                       persistence * static_cast<double>(n_rows);

    WalkerTrack track;
    // collapse consecutive static bins into ridges, refined by the mean of
    // the member rows' peak frequencies
    for (std::size_t j = 0; j < n_bins;) {
        if (!is_static[j]) {
            ++j;
            continue;
        }
        std::size_t end = j;
        while (end + 1 < n_bins && is_static[end + 1]) ++end;
        double f_acc = 0.0;
        std::size_t count = 0;
        for (const auto& row : peaks.rows)
            for (const Peak& p : row) {
                const double rel = (p.freq_hz - f0) / bin;
                if (rel >= static_cast<double>(j) - 0.5 && rel <= static_cast<double>(end) + 0.5) {
                    f_acc += p.freq_hz;
                    ++count;
                }
            }
        StaticRidge ridge;
        ridge.freq_hz = count ? f_acc / static_cast<double>(count)
                              : f0 + bin * 0.5 * static_cast<double>(j + end);
        ridge.distance_m = distance_from_beat(ridge.freq_hz, slope_hz_per_s, cable).distance_m;
        ridge.persistence =
            static_cast<double>(*std::max_element(hits.begin() + static_cast<std::ptrdiff_t>(j),
                                                  hits.begin() + static_cast<std::ptrdiff_t>(end) + 1)) /
            static_cast<double>(n_rows);
        track.static_ridges.push_back(ridge);
        j = end + 1;
    }

    auto near_static = [&](double freq_hz) {
        const std::ptrdiff_t j = std::lround((freq_hz - f0) / bin);
        for (std::ptrdiff_t k = j - 1; k <= j + 1; ++k)
            if (k >= 0 && static_cast<std::size_t>(k) < n_bins && is_static[static_cast<std::size_t>(k)])
                return true;
        return false;
    };

    for (std::size_t r = 0; r < n_rows; ++r) {
        const Peak* best = nullptr;
        for (const Peak& p : peaks.rows[r]) {
            if (near_static(p.freq_hz)) continue;
            if (!best || p.power_dbm > best->power_dbm ||
                (p.power_dbm == best->power_dbm && p.freq_hz < best->freq_hz))
                best = &p;
        }
        if (!best) continue;
        const RangeEstimate est = distance_from_beat(best->freq_hz, slope_hz_per_s, cable);
        track.samples.emplace_back(peaks.row_times_s[r], est.distance_m);
        if (!track.mover_detected || est.distance_m > track.distance_max_m) {
            track.distance_max_m = est.distance_m;
            track.beat_max_hz = best->freq_hz;
        }
        track.mover_detected = true;
    }
    return track;
}

/// Range-table CSV: label,f_b_mhz,d_m,flag
inline void write_range_table_csv(const std::vector<RangeEstimate>& rows,
                                  const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open range table for writing: " + path);
    out << "label,f_b_mhz,d_m,flag\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.4f,%.2f,%s\n", r.label.c_str(), r.beat_hz / 1e6,
                      r.distance_m, r.negative ? "negative" : "ok");
        out << buf;
    }
    if (!out) throw std::runtime_error("short write on range table: " + path);
}

}  // namespace twr
