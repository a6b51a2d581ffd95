#pragma once

#include <algorithm>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "twr/constants.hpp"
#include "twr/fft.hpp"
#include "twr/synth.hpp"

namespace twr {

enum class WindowKind { kHann, kHamming, kRect };

inline WindowKind window_kind_from_string(const std::string& s) {
    if (s == "hann") return WindowKind::kHann;
    if (s == "hamming") return WindowKind::kHamming;
    if (s == "rect") return WindowKind::kRect;
    throw std::invalid_argument("unknown window kind: " + s);
}

inline std::vector<double> make_window(WindowKind kind, std::size_t len) {
    std::vector<double> w(len, 1.0);
    for (std::size_t n = 0; n < len && kind != WindowKind::kRect; ++n) {
        const double x = 2.0 * kPi * static_cast<double>(n) / static_cast<double>(len - 1);
        w[n] = kind == WindowKind::kHann ? 0.5 - 0.5 * std::cos(x) : 0.54 - 0.46 * std::cos(x);
    }
    return w;
}

// Approximate -3 dB main-lobe width in bins of 1/T_window.
inline double window_rbw_factor(WindowKind kind) {
    switch (kind) {
        case WindowKind::kHann: return 1.44;
        case WindowKind::kHamming: return 1.30;
        case WindowKind::kRect: return 0.89;
    }
    return 1.0;
}

struct StftConfig {
    WindowKind window_kind = WindowKind::kHann;
    std::size_t window_len = 0;
    std::size_t hop = 0;
    std::size_t fft_len = 0;  // power of two, >= window_len (zero-padded)

    double resolution_bandwidth_hz(double sample_rate_hz) const {
        return window_rbw_factor(window_kind) * sample_rate_hz / static_cast<double>(window_len);
    }
};

inline void validate_stft(const StftConfig& cfg) {
    if (cfg.window_len == 0 || cfg.hop == 0 || cfg.fft_len == 0)
        throw std::invalid_argument("stft config: window_len, hop and fft_len must be set");
    if (cfg.hop > cfg.window_len)
        throw std::invalid_argument("stft config: hop must not exceed window_len");
    if (cfg.window_len > cfg.fft_len)
        throw std::invalid_argument("stft config: window_len must not exceed fft_len");
    if (!detail::is_power_of_two(cfg.fft_len))
        throw std::invalid_argument("stft config: fft_len must be a power of two");
}

/// Window length picked so the -3 dB resolution bandwidth lands on the target
/// (default 15 kHz); hop is a quarter window.
inline StftConfig default_stft_config(double sample_rate_hz, double target_rbw_hz = 15e3,
                                      WindowKind kind = WindowKind::kHann) {
    StftConfig cfg;
    cfg.window_kind = kind;
    cfg.window_len = static_cast<std::size_t>(
        std::lround(window_rbw_factor(kind) * sample_rate_hz / target_rbw_hz));
    cfg.hop = std::max<std::size_t>(1, cfg.window_len / 4);
    cfg.fft_len = detail::next_power_of_two(cfg.window_len);
    return cfg;
}

/// One-sided complex STFT grid. Coefficients carry the 2/sum(w) amplitude
/// normalization, so a sinusoid of amplitude A at a bin center reports |X|=A.
struct StftGrid {
    std::vector<std::vector<std::complex<double>>> rows;  // time x (fft_len/2+1)
    std::vector<double> row_times;                        // window-center scenario time
    double bin_spacing_hz = 0.0;
    double window_sum = 0.0;  // sum of window samples (for energy accounting)
    StftConfig config;
    double sample_rate_hz = 0.0;

    double bin_frequency(std::size_t k) const { return static_cast<double>(k) * bin_spacing_hz; }
};

namespace detail {

// Scenario time of a global sample index under frame concatenation.
inline double sample_time(const IfTrace& trace, std::size_t global_index) {
    const std::size_t spf = trace.samples_per_frame();
    const std::size_t frame = global_index / spf;
    const std::size_t within = global_index % spf;
    return trace.t0_of_frame[frame] + static_cast<double>(within) / trace.config.sample_rate_hz;
}

inline double sample_value(const IfTrace& trace, std::size_t global_index) {
    const std::size_t spf = trace.samples_per_frame();
    return trace.frames[global_index / spf][global_index % spf];
}

}  // namespace detail

/// Windowed, amplitude-normalized discrete STFT over the concatenated frames.
inline StftGrid stft(const IfTrace& trace, const StftConfig& cfg, unsigned n_threads = 1) {
    validate_stft(cfg);
    const std::size_t total = trace.n_frames() * trace.samples_per_frame();
    if (cfg.window_len > total)
        throw std::invalid_argument("stft: window_len exceeds the available samples");

    const std::vector<double> window = make_window(cfg.window_kind, cfg.window_len);
    double wsum = 0.0;
    for (double w : window) wsum += w;

    const std::size_t n_rows = (total - cfg.window_len) / cfg.hop + 1;
    const std::size_t n_bins = cfg.fft_len / 2 + 1;

    StftGrid grid;
    grid.rows.resize(n_rows);
    grid.row_times.resize(n_rows);
    grid.bin_spacing_hz = trace.config.sample_rate_hz / static_cast<double>(cfg.fft_len);
    grid.window_sum = wsum;
    grid.config = cfg;
    grid.sample_rate_hz = trace.config.sample_rate_hz;

    const double norm = 2.0 / wsum;
    auto work = [&](std::size_t begin, std::size_t end) {
        std::vector<std::complex<double>> buf(cfg.fft_len);
        for (std::size_t r = begin; r < end; ++r) {
            const std::size_t start = r * cfg.hop;
            for (std::size_t n = 0; n < cfg.window_len; ++n)
                buf[n] = window[n] * detail::sample_value(trace, start + n);
            std::fill(buf.begin() + static_cast<std::ptrdiff_t>(cfg.window_len), buf.end(),
                      std::complex<double>(0.0, 0.0));
            detail::fft_radix2(buf);
            auto& row = grid.rows[r];
            row.assign(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(n_bins));
            for (auto& c : row) c *= norm;
            grid.row_times[r] = detail::sample_time(trace, start + cfg.window_len / 2);
        }
    };
    if (n_threads <= 1 || n_rows < 2) {
        work(0, n_rows);
    } else {
        const unsigned workers = std::min<unsigned>(n_threads, static_cast<unsigned>(n_rows));
        std::vector<std::thread> pool;
        const std::size_t chunk = (n_rows + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = static_cast<std::size_t>(w) * chunk;
            const std::size_t end = std::min(n_rows, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    return grid;
}

/// Display axis and clamp bounds for exported spectrograms.
struct DisplayConfig {
    double f_min_hz = 1.0e6;
    double f_max_hz = 5.0e6;
    double f_step_hz = 5.0e3;
    double floor_dbm = -66.0;
    double ceil_dbm = -15.0;

    std::size_t n_points() const {
        return static_cast<std::size_t>(std::lround((f_max_hz - f_min_hz) / f_step_hz)) + 1;
    }
    // the wider window used for the through-wall runs
    static DisplayConfig through_wall() {
        DisplayConfig d;
        d.floor_dbm = -125.0;
        d.ceil_dbm = -25.0;
        return d;
    }
};

/// Calibrated time x frequency power grid in dBm. Values keep full dynamic
/// range; the clamp bounds only apply when exporting.
struct SpectrogramGrid {
    std::vector<std::vector<double>> power_dbm;  // time x frequency
    std::vector<double> freq_axis_hz;
    std::vector<double> time_axis_s;
    double floor_dbm = -66.0;
    double ceil_dbm = -15.0;
};

/// Squared-magnitude STFT mapped to dBm into the reference load and linearly
/// resampled (in power) onto the display axis.
inline SpectrogramGrid spectrogram(const IfTrace& trace, const StftConfig& cfg,
                                   const DisplayConfig& display, unsigned n_threads = 1) {
    if (display.f_step_hz <= 0.0 || display.f_min_hz >= display.f_max_hz)
        throw std::invalid_argument("display axis: need f_min < f_max and positive step");
    if (display.f_max_hz > trace.config.sample_rate_hz / 2.0)
        throw std::invalid_argument("display axis extends beyond the Nyquist frequency");
    if (display.floor_dbm > display.ceil_dbm)
        throw std::invalid_argument("display clamp: floor must not exceed ceil");

    const StftGrid stft_grid = stft(trace, cfg, n_threads);

    SpectrogramGrid grid;
    grid.floor_dbm = display.floor_dbm;
    grid.ceil_dbm = display.ceil_dbm;
    grid.time_axis_s = stft_grid.row_times;
    const std::size_t n_points = display.n_points();
    grid.freq_axis_hz.resize(n_points);
    for (std::size_t j = 0; j < n_points; ++j)
        grid.freq_axis_hz[j] = display.f_min_hz + static_cast<double>(j) * display.f_step_hz;

    grid.power_dbm.resize(stft_grid.rows.size());
    for (std::size_t r = 0; r < stft_grid.rows.size(); ++r) {
        const auto& bins = stft_grid.rows[r];
        auto& out = grid.power_dbm[r];
        out.resize(n_points);
        for (std::size_t j = 0; j < n_points; ++j) {
            const double f = grid.freq_axis_hz[j];
            const double pos = f / stft_grid.bin_spacing_hz;
            const std::size_t k = static_cast<std::size_t>(pos);
            const double frac = pos - static_cast<double>(k);
            const double p0 = std::norm(bins[k]) / (2.0 * kReferenceOhms);
            const double p1 =
                k + 1 < bins.size() ? std::norm(bins[k + 1]) / (2.0 * kReferenceOhms) : p0;
            out[j] = watts_to_dbm(p0 + frac * (p1 - p0));
        }
    }
    return grid;
}

/// Peak frequency of one power row (values in dBm). With parabolic refinement
/// a three-point log-domain parabola interpolates between bins.
inline double estimate_peak_frequency(const std::vector<double>& power_dbm,
                                      const std::vector<double>& freq_axis_hz, bool parabolic) {
    if (power_dbm.size() != freq_axis_hz.size() || power_dbm.empty())
        throw std::invalid_argument("estimate_peak_frequency: axis/row size mismatch");
    std::size_t peak = 0;
    for (std::size_t j = 1; j < power_dbm.size(); ++j)
        if (power_dbm[j] > power_dbm[peak]) peak = j;
    if (!parabolic || peak == 0 || peak + 1 == power_dbm.size()) return freq_axis_hz[peak];
    const double y1 = power_dbm[peak - 1], y2 = power_dbm[peak], y3 = power_dbm[peak + 1];
    const double denom = y1 - 2.0 * y2 + y3;
    if (denom == 0.0) return freq_axis_hz[peak];
    const double offset = 0.5 * (y1 - y3) / denom;
    const double step = freq_axis_hz[1] - freq_axis_hz[0];
    return freq_axis_hz[peak] + std::min(std::max(offset, -0.5), 0.5) * step;
}

// ---------------------------------------------------------------------------
// Grid export: CSV (frequencies across the header, times down the first
// column, cells in dBm with 2 decimals) and 8-bit grayscale PGM (P5).
// ---------------------------------------------------------------------------

inline void export_grid_csv(const SpectrogramGrid& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open CSV for writing: " + path);
    char buf[64];
    out << "time_s";
    for (double f : g.freq_axis_hz) {
        std::snprintf(buf, sizeof(buf), ",%.10g", f);
        out << buf;
    }
    out << '\n';
    for (std::size_t r = 0; r < g.power_dbm.size(); ++r) {
        std::snprintf(buf, sizeof(buf), "%.9g", g.time_axis_s[r]);
        out << buf;
        for (double p : g.power_dbm[r]) {
            std::snprintf(buf, sizeof(buf), ",%.2f", p);
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("short write on CSV: " + path);
}

inline SpectrogramGrid read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV: " + path);
    SpectrogramGrid g;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("CSV " + path + ": empty file");
    {
        std::istringstream hs(line);
        std::string cell;
        if (!std::getline(hs, cell, ',') || cell != "time_s")
            throw std::runtime_error("CSV " + path + ": expected 'time_s' header");
        while (std::getline(hs, cell, ',')) g.freq_axis_hz.push_back(std::stod(cell));
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream rs(line);
        std::string cell;
        std::getline(rs, cell, ',');
        g.time_axis_s.push_back(std::stod(cell));
        std::vector<double> row;
        row.reserve(g.freq_axis_hz.size());
        while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != g.freq_axis_hz.size())
            throw std::runtime_error("CSV " + path + ": ragged row " +
                                     std::to_string(g.time_axis_s.size()));
        g.power_dbm.push_back(std::move(row));
    }
    return g;
}

/// Pixel mapping: round-half-down of the clamped linear map, 0 at the floor,
/// 255 at the ceiling. Time ascends downward, frequency rightward.
inline void export_grid_pgm(const SpectrogramGrid& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open PGM for writing: " + path);
    const std::size_t w = g.freq_axis_hz.size();
    const std::size_t h = g.power_dbm.size();
    out << "P5\n" << w << ' ' << h << "\n255\n";
    const double span = g.ceil_dbm - g.floor_dbm;
    std::vector<unsigned char> row_bytes(w);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t j = 0; j < w; ++j) {
            double frac = 0.0;
            if (span > 0.0) {
                const double clamped =
                    std::min(std::max(g.power_dbm[r][j], g.floor_dbm), g.ceil_dbm);
                frac = (clamped - g.floor_dbm) / span;
            }
            const double q = std::ceil(255.0 * frac - 0.5);
            row_bytes[j] = static_cast<unsigned char>(std::min(std::max(q, 0.0), 255.0));
        }
        out.write(reinterpret_cast<const char*>(row_bytes.data()),
                  static_cast<std::streamsize>(w));
    }
    if (!out) throw std::runtime_error("short write on PGM: " + path);
}

}  // namespace twr
