#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "twr/ranging.hpp"
#include "twr/scene_config.hpp"
#include "twr/spectro.hpp"
#include "twr/synth.hpp"

namespace twr {

struct RunArtifacts {
    std::string trace_path;
    std::string grid_csv_path;
    std::string grid_pgm_path;
    std::string ranges_path;
    std::string summary_path;
    WalkerTrack track;
    SimulationSetup setup;
    std::size_t total_peaks = 0;
};

namespace pipeline_detail {

inline std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

inline void write_summary(const RunArtifacts& artifacts, const RunManifest& manifest,
                          const IfTrace& trace) {
    const SimulationSetup& setup = artifacts.setup;
    std::ofstream out(artifacts.summary_path);
    if (!out) throw std::runtime_error("cannot open summary for writing: " + artifacts.summary_path);
    char buf[256];
    auto line = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof(buf), fmt, args...);
        out << buf << '\n';
    };
    out << "run:\n";
    line("  scene: %s", manifest.scene_path.c_str());
    line("  seed: %llu", static_cast<unsigned long long>(setup.scene.noise.seed));
    out << "radar:\n";
    line("  start_freq_hz: %.6g", setup.chirp.start_freq_hz);
    line("  bandwidth_hz: %.6g", setup.chirp.bandwidth_hz);
    line("  duration_s: %.9g", setup.chirp.duration_s);
    line("  slope_hz_per_s: %.6g", setup.chirp.slope_hz_per_s);
    line("  tx_power_dbm: %.2f", setup.chirp.tx_power_dbm);
    line("  range_resolution_m: %.4f", range_resolution(setup.chirp.bandwidth_hz));
    out << "receiver:\n";
    line("  sample_rate_hz: %.6g", setup.receiver.sample_rate_hz);
    line("  samples_per_frame: %zu", trace.samples_per_frame());
    line("  frame_interval_s: %.6g", setup.receiver.frame_interval_s);
    line("  frames: %zu", trace.n_frames());
    out << "cable:\n";
    line("  d0_m: %.4f", effective_cable_length(setup.scene.cable));
    out << "antenna:\n";
    line("  name: %s", setup.scene.antenna.name.c_str());
    if (!setup.scene.antenna.notes.empty())
        line("  notes: %s", setup.scene.antenna.notes.c_str());
    out << "stft:\n";
    line("  window_len: %zu", setup.stft.window_len);
    line("  hop: %zu", setup.stft.hop);
    line("  fft_len: %zu", setup.stft.fft_len);
    line("  rbw_hz: %.1f", setup.stft.resolution_bandwidth_hz(setup.receiver.sample_rate_hz));
    out << "detection:\n";
    line("  threshold_dbm: %.2f", setup.detect.threshold_dbm);
    line("  min_separation_hz: %.1f", setup.detect.min_separation_hz);
    line("  peaks_total: %zu", artifacts.total_peaks);
    out << "static_ridges:\n";
    for (const auto& ridge : artifacts.track.static_ridges)
        line("  - f_b_mhz: %.4f  d_m: %.2f  persistence: %.2f", ridge.freq_hz / 1e6,
             ridge.distance_m, ridge.persistence);
    out << "walker:\n";
    line("  detected: %s", artifacts.track.mover_detected ? "true" : "false");
    if (artifacts.track.mover_detected) {
        line("  f_b_max_mhz: %.4f", artifacts.track.beat_max_hz / 1e6);
        line("  d_max_m: %.2f", artifacts.track.distance_max_m);
        line("  samples: %zu", artifacts.track.samples.size());
    }
}

}  // namespace pipeline_detail

/// Full simulate pipeline: synthesize, spectrogram, peak extraction, walker
/// tracking, artifact export. Deterministic for a fixed manifest; the thread
/// count only affects wall-clock time.
inline RunArtifacts run_simulate(const RunManifest& manifest) {
    RunArtifacts artifacts;
    artifacts.setup = load_simulation_setup(manifest);
    const SimulationSetup& setup = artifacts.setup;

    std::filesystem::create_directories(manifest.out_dir);
    artifacts.trace_path = pipeline_detail::join(manifest.out_dir, "trace.twrif");
    artifacts.grid_csv_path = pipeline_detail::join(manifest.out_dir, "spectrogram.csv");
    artifacts.grid_pgm_path = pipeline_detail::join(manifest.out_dir, "spectrogram.pgm");
    artifacts.ranges_path = pipeline_detail::join(manifest.out_dir, "ranges.csv");
    artifacts.summary_path = pipeline_detail::join(manifest.out_dir, "run.txt");

    IfTrace trace =
        synthesize(setup.scene, setup.chirp, setup.receiver, setup.n_frames, manifest.threads);
    write_trace(trace, artifacts.trace_path);
    // analyze on the exported trace must reproduce this grid, so the grid is
    // computed from the float32 wire samples
    quantize_trace_to_wire(trace);

    const SpectrogramGrid grid = spectrogram(trace, setup.stft, setup.display, manifest.threads);
    export_grid_csv(grid, artifacts.grid_csv_path);
    export_grid_pgm(grid, artifacts.grid_pgm_path);

    const PeakList peaks =
        extract_peaks(grid, setup.detect.threshold_dbm, setup.detect.min_separation_hz);
    for (const auto& row : peaks.rows) artifacts.total_peaks += row.size();
    artifacts.track = track_walker(peaks, setup.chirp.slope_hz_per_s, setup.scene.cable,
                                   setup.detect.static_persistence);

    std::vector<RangeEstimate> rows;
    for (std::size_t i = 0; i < artifacts.track.static_ridges.size(); ++i) {
        const auto& ridge = artifacts.track.static_ridges[i];
        RangeEstimate est = distance_from_beat(ridge.freq_hz, setup.chirp.slope_hz_per_s,
                                               setup.scene.cable,
                                               "static-" + std::to_string(i));
        rows.push_back(est);
    }
    if (artifacts.track.mover_detected)
        rows.push_back(distance_from_beat(artifacts.track.beat_max_hz, setup.chirp.slope_hz_per_s,
                                          setup.scene.cable, "walker-max"));
    write_range_table_csv(rows, artifacts.ranges_path);
    pipeline_detail::write_summary(artifacts, manifest, trace);
    return artifacts;
}

struct AnalyzeOptions {
    std::string trace_path;
    std::string out_dir = ".";
    unsigned threads = 1;
    StftConfig stft;      // window_len == 0 means derive defaults from the trace
    DisplayConfig display;
    DetectConfig detect;
    std::optional<double> slope_hz_per_s;    // enables distance conversion
    double d0_m = 0.0;
    std::optional<double> frame_interval_s;  // wire format assumes back-to-back
};

struct AnalyzeArtifacts {
    std::string grid_csv_path;
    std::string grid_pgm_path;
    std::string peaks_path;
    std::string ranges_path;  // empty when no slope was given
};

/// Replay a raw trace through the spectrogram and peak stages without
/// re-synthesis. Distances are only reported when the sweep slope is known.
inline AnalyzeArtifacts run_analyze(const AnalyzeOptions& options) {
    IfTrace trace = read_trace(options.trace_path);
    if (options.frame_interval_s) {
        trace.config.frame_interval_s = *options.frame_interval_s;
        for (std::size_t k = 0; k < trace.t0_of_frame.size(); ++k)
            trace.t0_of_frame[k] = static_cast<double>(k) * *options.frame_interval_s;
    }
    StftConfig cfg = options.stft;
    if (cfg.window_len == 0) {
        // derive the sizing from the trace's own sample rate; the requested
        // window kind (and any explicit hop/fft overrides) still apply
        const StftConfig derived =
            default_stft_config(trace.config.sample_rate_hz, 15e3, cfg.window_kind);
        cfg.window_len = derived.window_len;
        if (cfg.hop == 0) cfg.hop = derived.hop;
        if (cfg.fft_len == 0) cfg.fft_len = derived.fft_len;
    }
    std::filesystem::create_directories(options.out_dir);

    AnalyzeArtifacts artifacts;
    artifacts.grid_csv_path = pipeline_detail::join(options.out_dir, "spectrogram.csv");
    artifacts.grid_pgm_path = pipeline_detail::join(options.out_dir, "spectrogram.pgm");
    artifacts.peaks_path = pipeline_detail::join(options.out_dir, "peaks.csv");

    const SpectrogramGrid grid = spectrogram(trace, cfg, options.display, options.threads);
    export_grid_csv(grid, artifacts.grid_csv_path);
    export_grid_pgm(grid, artifacts.grid_pgm_path);

    const PeakList peaks =
        extract_peaks(grid, options.detect.threshold_dbm, options.detect.min_separation_hz);
    {
        std::ofstream out(artifacts.peaks_path);
        if (!out) throw std::runtime_error("cannot open peaks file: " + artifacts.peaks_path);
        out << "time_s,f_b_mhz,power_dbm\n";
        char buf[128];
        for (std::size_t r = 0; r < peaks.rows.size(); ++r)
            for (const Peak& p : peaks.rows[r]) {
                std::snprintf(buf, sizeof(buf), "%.9g,%.4f,%.2f\n", peaks.row_times_s[r],
                              p.freq_hz / 1e6, p.power_dbm);
                out << buf;
            }
    }
    if (options.slope_hz_per_s) {
        artifacts.ranges_path = pipeline_detail::join(options.out_dir, "ranges.csv");
        const CableRun cable = fixed_d0_cable(options.d0_m);
        const WalkerTrack track = track_walker(peaks, *options.slope_hz_per_s, cable,
                                               options.detect.static_persistence);
        std::vector<RangeEstimate> rows;
        for (std::size_t i = 0; i < track.static_ridges.size(); ++i)
            rows.push_back(distance_from_beat(track.static_ridges[i].freq_hz,
                                              *options.slope_hz_per_s, cable,
                                              "static-" + std::to_string(i)));
        if (track.mover_detected)
            rows.push_back(
                distance_from_beat(track.beat_max_hz, *options.slope_hz_per_s, cable, "walker-max"));
        write_range_table_csv(rows, artifacts.ranges_path);
    }
    return artifacts;
}

}  // namespace twr
