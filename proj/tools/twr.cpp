// twr: through-wall FMCW radar simulator and spectrogram toolkit CLI.
//
// Subcommands:
//   simulate  - scene file -> IF trace, spectrogram grid and image, ranges
//   analyze   - replay a raw TWRIF1 trace through the spectrogram stages
//   validate  - check the built-in math against the published reference tables
//   presets   - list radar sweep, antenna and wall presets

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twr/twr.hpp"

namespace {

struct CommonStftFlags {
    std::string window;
    std::size_t window_len = 0;
    std::size_t hop = 0;
    std::size_t fft_len = 0;
    std::size_t freq_points = 0;
    double floor_dbm = 0.0;
    double ceil_dbm = 0.0;
    bool has_floor = false;
    bool has_ceil = false;
};

void add_stft_flags(CLI::App* cmd, CommonStftFlags& flags) {
    cmd->add_option("--window", flags.window, "Analysis window: hann | hamming | rect");
    cmd->add_option("--window-len", flags.window_len, "Window length in samples");
    cmd->add_option("--hop", flags.hop, "Hop between analysis windows in samples");
    cmd->add_option("--fft-len", flags.fft_len, "FFT length (power of two)");
    cmd->add_option("--freq-points", flags.freq_points, "Number of display frequency points");
    cmd->add_option("--floor-dbm", flags.floor_dbm, "Display clamp floor in dBm")
        ->each([&](const std::string&) { flags.has_floor = true; });
    cmd->add_option("--ceil-dbm", flags.ceil_dbm, "Display clamp ceiling in dBm")
        ->each([&](const std::string&) { flags.has_ceil = true; });
}

int run_presets_list() {
    std::printf("radar presets:\n");
    for (const char* name : {"roc-operational", "roc-nominal"}) {
        const twr::ChirpParams p = twr::radar_preset(name);
        std::printf("  %-16s %.3f-%.3f GHz  slope %.1f MHz/us  T %.2f us  %g dBm\n", name,
                    p.start_freq_hz / 1e9, (p.start_freq_hz + p.bandwidth_hz) / 1e9,
                    p.slope_hz_per_s / 1e12, p.duration_s * 1e6, p.tx_power_dbm);
    }
    std::printf("antenna presets:\n");
    for (const char* name : {"horn", "vivaldi", "quasi-yagi"}) {
        const twr::AntennaModel m = twr::antenna_preset(name);
        std::printf("  %-16s fbr %.2f dB  directivity %.2f dBi  cos^n exponent %.2f", name,
                    m.fbr_db, m.directivity_dbi, m.pattern_exponent);
        std::printf("  gain");
        for (const auto& [f, g] : m.gain_table) std::printf(" %.2fGHz:%.1fdBi", f / 1e9, g);
        if (!m.notes.empty()) std::printf("  [%s]", m.notes.c_str());
        std::printf("\n");
    }
    std::printf("wall presets:\n");
    for (const char* name : {"wooden-partition", "brick-mortar-40cm"}) {
        const twr::Wall w = twr::wall_preset(name, name);
        std::printf("  %-18s one-way loss %.1f dB  thickness %.2f m\n", name, w.one_way_loss_db,
                    w.thickness_m);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"through-wall FMCW radar simulator and spectrogram toolkit"};
    app.require_subcommand(1);

    // --- simulate ---
    auto* simulate = app.add_subcommand("simulate", "Run a scene through the full pipeline");
    twr::RunManifest manifest;
    std::string radar_preset_flag, antenna_flag;
    std::uint64_t seed_flag = 0;
    double duration_flag = 0.0, threshold_flag = 0.0;
    std::size_t frames_flag = 0;
    CommonStftFlags stft_flags;
    simulate->add_option("--scene", manifest.scene_path, "Scene INI file")->required();
    simulate->add_option("--out", manifest.out_dir, "Output directory");
    simulate->add_option("--threads", manifest.threads, "Worker threads");
    auto* seed_opt = simulate->add_option("--seed", seed_flag, "Noise seed override");
    auto* radar_opt =
        simulate->add_option("--radar-preset", radar_preset_flag, "Radar sweep preset");
    auto* ant_opt = simulate->add_option("--antenna", antenna_flag, "Antenna preset name");
    auto* dur_opt = simulate->add_option("--duration", duration_flag, "Scenario duration in s");
    auto* frames_opt = simulate->add_option("--frames", frames_flag, "Number of chirp frames");
    auto* thr_opt =
        simulate->add_option("--threshold-dbm", threshold_flag, "Peak extraction threshold");
    add_stft_flags(simulate, stft_flags);

    // --- analyze ---
    auto* analyze = app.add_subcommand("analyze", "Replay a raw TWRIF1 trace");
    twr::AnalyzeOptions analyze_options;
    double slope_flag = 0.0;
    CommonStftFlags analyze_stft;
    analyze->add_option("--trace", analyze_options.trace_path, "TWRIF1 trace file")->required();
    analyze->add_option("--out", analyze_options.out_dir, "Output directory");
    analyze->add_option("--threads", analyze_options.threads, "Worker threads");
    auto* slope_opt = analyze->add_option("--slope", slope_flag,
                                          "Sweep slope in Hz/s (enables range conversion)");
    analyze->add_option("--d0", analyze_options.d0_m, "Cable constant d0 in m");
    double frame_interval_flag = 0.0;
    auto* fi_opt = analyze->add_option("--frame-interval", frame_interval_flag,
                                       "Chirp repetition interval in s (default: back-to-back)");
    analyze->add_option("--threshold-dbm", analyze_options.detect.threshold_dbm,
                        "Peak extraction threshold");
    add_stft_flags(analyze, analyze_stft);

    // --- validate ---
    auto* validate = app.add_subcommand("validate", "Run the reference-table checks");
    bool quiet = false;
    validate->add_flag("--quiet", quiet, "Only print the per-check verdict lines");

    // --- presets ---
    auto* presets = app.add_subcommand("presets", "Preset inventory");
    presets->add_subcommand("list", "List radar, antenna and wall presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            if (*seed_opt) manifest.seed = seed_flag;
            if (*radar_opt) manifest.radar_preset = radar_preset_flag;
            if (*ant_opt) manifest.antenna = antenna_flag;
            if (*dur_opt) manifest.duration_s = duration_flag;
            if (*frames_opt) manifest.n_frames = frames_flag;
            if (*thr_opt) manifest.threshold_dbm = threshold_flag;
            if (!stft_flags.window.empty()) manifest.window = stft_flags.window;
            if (stft_flags.window_len) manifest.window_len = stft_flags.window_len;
            if (stft_flags.hop) manifest.hop = stft_flags.hop;
            if (stft_flags.fft_len) manifest.fft_len = stft_flags.fft_len;
            if (stft_flags.freq_points) manifest.freq_points = stft_flags.freq_points;
            if (stft_flags.has_floor) manifest.floor_dbm = stft_flags.floor_dbm;
            if (stft_flags.has_ceil) manifest.ceil_dbm = stft_flags.ceil_dbm;

            const twr::RunArtifacts artifacts = twr::run_simulate(manifest);
            std::printf("wrote %s\n", artifacts.trace_path.c_str());
            std::printf("wrote %s\n", artifacts.grid_csv_path.c_str());
            std::printf("wrote %s\n", artifacts.grid_pgm_path.c_str());
            std::printf("wrote %s\n", artifacts.ranges_path.c_str());
            std::printf("wrote %s\n", artifacts.summary_path.c_str());
            return 0;
        }
        if (analyze->parsed()) {
            if (*slope_opt) analyze_options.slope_hz_per_s = slope_flag;
            if (*fi_opt) analyze_options.frame_interval_s = frame_interval_flag;
            // leave sizes at zero unless given; run_analyze derives the rest
            // from the trace's sample rate
            if (!analyze_stft.window.empty())
                analyze_options.stft.window_kind =
                    twr::window_kind_from_string(analyze_stft.window);
            if (analyze_stft.window_len) {
                analyze_options.stft.window_len = analyze_stft.window_len;
                analyze_options.stft.hop =
                    std::max<std::size_t>(1, analyze_stft.window_len / 4);
                analyze_options.stft.fft_len =
                    twr::detail::next_power_of_two(analyze_stft.window_len);
            }
            if (analyze_stft.hop) analyze_options.stft.hop = analyze_stft.hop;
            if (analyze_stft.fft_len) analyze_options.stft.fft_len = analyze_stft.fft_len;
            if (analyze_stft.freq_points) {
                analyze_options.display.f_step_hz =
                    (analyze_options.display.f_max_hz - analyze_options.display.f_min_hz) /
                    static_cast<double>(analyze_stft.freq_points - 1);
            }
            if (analyze_stft.has_floor) analyze_options.display.floor_dbm = analyze_stft.floor_dbm;
            if (analyze_stft.has_ceil) analyze_options.display.ceil_dbm = analyze_stft.ceil_dbm;

            const twr::AnalyzeArtifacts artifacts = twr::run_analyze(analyze_options);
            std::printf("wrote %s\n", artifacts.grid_csv_path.c_str());
            std::printf("wrote %s\n", artifacts.grid_pgm_path.c_str());
            std::printf("wrote %s\n", artifacts.peaks_path.c_str());
            if (!artifacts.ranges_path.empty())
                std::printf("wrote %s\n", artifacts.ranges_path.c_str());
            return 0;
        }
        if (validate->parsed()) {
            const twr::ValidationReport report = twr::run_validation();
            std::fputs(twr::format_report(report, !quiet).c_str(), stdout);
            return report.all_passed() ? 0 : 1;
        }
        if (presets->parsed()) return run_presets_list();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
