#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "twr/antenna.hpp"
#include "twr/chirp.hpp"
#include "twr/ini.hpp"
#include "twr/ranging.hpp"
#include "twr/scene.hpp"
#include "twr/spectro.hpp"
#include "twr/synth.hpp"

namespace twr {

struct DetectConfig {
    double threshold_dbm = -75.0;
    double min_separation_hz = 20e3;
    double static_persistence = 0.8;
};

/// Everything a pipeline run needs, resolved from preset defaults, the scene
/// file and command-line overrides, in that order of increasing precedence.
struct SimulationSetup {
    ChirpParams chirp;
    ReceiverConfig receiver;
    Scene scene;
    StftConfig stft;
    DisplayConfig display;
    DetectConfig detect;
    std::size_t n_frames = 0;
    double duration_s = 0.0;
};

/// Command-line overrides; unset fields defer to the scene file / presets.
struct RunManifest {
    std::string scene_path;
    std::string out_dir = ".";
    unsigned threads = 1;
    std::optional<std::string> radar_preset;
    std::optional<std::string> antenna;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration_s;
    std::optional<std::size_t> n_frames;
    std::optional<std::string> window;
    std::optional<std::size_t> window_len;
    std::optional<std::size_t> hop;
    std::optional<std::size_t> fft_len;
    std::optional<std::size_t> freq_points;
    std::optional<double> floor_dbm;
    std::optional<double> ceil_dbm;
    std::optional<double> threshold_dbm;
};

namespace config_detail {

inline ChirpParams load_chirp(const IniFile& ini, const RunManifest& manifest) {
    const std::string section = "radar";
    std::string preset = ini.get_string(section, "preset", "roc-operational");
    if (manifest.radar_preset) preset = *manifest.radar_preset;
    ChirpParams base = radar_preset(preset);

    const double f_c = ini.get_double(section, "f_c_hz", base.start_freq_hz);
    const double bw = ini.get_double(section, "bandwidth_hz", base.bandwidth_hz);
    const double phi0 = ini.get_double(section, "initial_phase_rad", base.initial_phase_rad);
    const double power = ini.get_double(section, "tx_power_dbm", base.tx_power_dbm);
    const bool has_t = ini.get(section, "duration_s").has_value();
    const bool has_s = ini.get(section, "slope_hz_per_s").has_value();
    if (has_t && has_s) {
        const double t = ini.get_double(section, "duration_s", 0.0);
        const double s = ini.get_double(section, "slope_hz_per_s", 0.0);
        if (std::abs(s - bw / t) > 1e-9 * std::abs(s))
            ini.fail(section, "slope_hz_per_s",
                     "slope and duration disagree (need s = B/T to 1e-9 relative)");
        return make_chirp(f_c, bw, t, phi0, power);
    }
    if (has_t) return make_chirp(f_c, bw, ini.get_double(section, "duration_s", 0.0), phi0, power);
    if (has_s)
        return make_chirp_from_slope(f_c, bw, ini.get_double(section, "slope_hz_per_s", 0.0),
                                     phi0, power);
    return make_chirp_from_slope(f_c, bw, base.slope_hz_per_s, phi0, power);
}

inline AntennaModel load_antenna(const IniFile& ini, const RunManifest& manifest) {
    if (manifest.antenna) return antenna_preset(*manifest.antenna);
    if (auto table = ini.get("antenna", "table")) {
        return load_gain_table_csv(*table, ini.get_double("antenna", "fbr_db", 0.0),
                                   ini.get_double("antenna", "directivity_dbi", 0.0));
    }
    return antenna_preset(ini.get_string("antenna", "name", "quasi-yagi"));
}

inline CableRun load_cable(const IniFile& ini) {
    CableRun cable;
    const std::string convention = ini.get_string("cable", "convention", "fixed-d0");
    if (convention == "fixed-d0")
        cable.convention = CableRun::Convention::kFixedD0;
    else if (convention == "sqrt-eps")
        cable.convention = CableRun::Convention::kSqrtEps;
    else if (convention == "paper-eps")
        cable.convention = CableRun::Convention::kPaperEps;
    else
        ini.fail("cable", "convention", "expected fixed-d0 | sqrt-eps | paper-eps");
    cable.l1_m = ini.get_double("cable", "l1_m", 0.0);
    cable.eps_r1 = ini.get_double("cable", "eps_r1", 1.0);
    cable.l2_m = ini.get_double("cable", "l2_m", 0.0);
    cable.eps_r2 = ini.get_double("cable", "eps_r2", 1.0);
    cable.d0_override_m = ini.get_double("cable", "d0_m", 0.0);
    validate_cable(cable);
    return cable;
}

inline Trajectory load_trajectory(const IniFile& ini, const std::string& section) {
    const std::string kind = ini.get_string(section, "kind", "static");
    if (kind == "static")
        return static_trajectory(ini.get_double(section, "distance_m", 0.0));
    if (kind == "back-and-forth") {
        const std::string start = ini.get_string(section, "start_at", "near");
        if (start != "near" && start != "far")
            ini.fail(section, "start_at", "expected near | far");
        return walker_trajectory(ini.get_double(section, "d_near_m", 0.0),
                                 ini.get_double(section, "d_far_m", 0.0),
                                 ini.get_double(section, "speed_mps", 0.0), start == "near");
    }
    ini.fail(section, "kind", "expected static | back-and-forth");
}

inline std::vector<std::string> split_csv_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = item.find_last_not_of(" \t");
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace config_detail

inline SimulationSetup load_simulation_setup(const IniFile& ini, const RunManifest& manifest) {
    SimulationSetup setup;
    setup.chirp = config_detail::load_chirp(ini, manifest);

    setup.receiver.sample_rate_hz = ini.get_double("receiver", "sample_rate_hz", 24.32e6);
    setup.receiver.samples_per_frame =
        static_cast<std::size_t>(ini.get_u64("receiver", "samples_per_frame", 0));
    setup.receiver.frame_interval_s = ini.get_double("receiver", "frame_interval_s", 0.030);
    setup.receiver.conversion_gain_db = ini.get_double("receiver", "conversion_gain_db", 0.0);
    setup.receiver.if_bandwidth_hz = ini.get_double("receiver", "if_bandwidth_hz", 12.0e6);
    setup.receiver.adc_bits = static_cast<int>(ini.get_u64("receiver", "adc_bits", 0));
    setup.receiver.adc_full_scale_v = ini.get_double("receiver", "adc_full_scale_v", 1.0);
    validate_receiver(setup.receiver);

    setup.scene.antenna = config_detail::load_antenna(ini, manifest);
    setup.scene.cable = config_detail::load_cable(ini);
    setup.scene.tx_extra_gain_db = ini.get_double("radar", "tx_gain_db", 0.0);

    for (const auto& section : ini.sections_with_prefix("wall.")) {
        const std::string label = section.substr(5);
        if (auto preset = ini.get(section, "preset")) {
            setup.scene.walls[label] = wall_preset(*preset, label);
        } else {
            Wall w;
            w.label = label;
            w.one_way_loss_db = ini.get_double(section, "one_way_loss_db", 0.0);
            w.thickness_m = ini.get_double(section, "thickness_m", 0.0);
            if (w.one_way_loss_db < 0.0)
                ini.fail(section, "one_way_loss_db", "wall loss must be >= 0");
            setup.scene.walls[label] = w;
        }
    }
    for (const auto& section : ini.sections_with_prefix("target.")) {
        Reflector r;
        r.label = section.substr(7);
        r.rcs_sqm = ini.get_double(section, "rcs_sqm", 0.5);
        if (r.rcs_sqm <= 0.0) ini.fail(section, "rcs_sqm", "radar cross section must be > 0");
        r.trajectory = config_detail::load_trajectory(ini, section);
        r.off_axis_rad = ini.get_double(section, "off_axis_rad", 0.0);
        r.walls_crossed = config_detail::split_csv_list(ini.get_string(section, "walls", ""));
        for (const auto& wall : r.walls_crossed)
            if (!setup.scene.walls.count(wall))
                ini.fail(section, "walls", "unknown wall label '" + wall + "'");
        setup.scene.reflectors.push_back(std::move(r));
    }

    setup.scene.noise.density_dbm_per_hz =
        ini.get_double("noise", "density_dbm_per_hz", -135.0);
    setup.scene.noise.enabled = ini.get_bool("noise", "enabled", true);
    setup.scene.noise.seed = ini.get_u64("noise", "seed", 1);
    if (manifest.seed) setup.scene.noise.seed = *manifest.seed;

    // STFT: resolution-bandwidth-driven defaults, explicit keys, then flags.
    WindowKind window = window_kind_from_string(ini.get_string("stft", "window", "hann"));
    if (manifest.window) window = window_kind_from_string(*manifest.window);
    setup.stft = default_stft_config(setup.receiver.sample_rate_hz,
                                     ini.get_double("stft", "rbw_hz", 15e3), window);
    if (auto v = ini.get("stft", "window_len"))
        setup.stft.window_len = static_cast<std::size_t>(std::stoull(*v));
    if (auto v = ini.get("stft", "hop")) setup.stft.hop = static_cast<std::size_t>(std::stoull(*v));
    if (auto v = ini.get("stft", "fft_len"))
        setup.stft.fft_len = static_cast<std::size_t>(std::stoull(*v));
    if (manifest.window_len) {
        setup.stft.window_len = *manifest.window_len;
        setup.stft.hop = std::max<std::size_t>(1, setup.stft.window_len / 4);
        setup.stft.fft_len = detail::next_power_of_two(setup.stft.window_len);
    }
    if (manifest.hop) setup.stft.hop = *manifest.hop;
    if (manifest.fft_len) setup.stft.fft_len = *manifest.fft_len;
    validate_stft(setup.stft);

    if (ini.get_string("display", "preset", "standard") == "through-wall")
        setup.display = DisplayConfig::through_wall();
    setup.display.f_min_hz = ini.get_double("display", "f_min_hz", setup.display.f_min_hz);
    setup.display.f_max_hz = ini.get_double("display", "f_max_hz", setup.display.f_max_hz);
    setup.display.f_step_hz = ini.get_double("display", "f_step_hz", setup.display.f_step_hz);
    if (auto points = ini.get("display", "freq_points")) {
        const auto n = std::stoull(*points);
        if (n < 2) ini.fail("display", "freq_points", "need at least 2 points");
        setup.display.f_step_hz =
            (setup.display.f_max_hz - setup.display.f_min_hz) / static_cast<double>(n - 1);
    }
    setup.display.floor_dbm = ini.get_double("display", "floor_dbm", setup.display.floor_dbm);
    setup.display.ceil_dbm = ini.get_double("display", "ceil_dbm", setup.display.ceil_dbm);
    if (manifest.freq_points) {
        if (*manifest.freq_points < 2)
            throw std::invalid_argument("--freq-points: need at least 2 points");
        setup.display.f_step_hz = (setup.display.f_max_hz - setup.display.f_min_hz) /
                                  static_cast<double>(*manifest.freq_points - 1);
    }
    if (manifest.floor_dbm) setup.display.floor_dbm = *manifest.floor_dbm;
    if (manifest.ceil_dbm) setup.display.ceil_dbm = *manifest.ceil_dbm;

    setup.detect.threshold_dbm = ini.get_double("detect", "threshold_dbm", -75.0);
    setup.detect.min_separation_hz = ini.get_double("detect", "min_separation_hz", 20e3);
    setup.detect.static_persistence = ini.get_double("detect", "persistence", 0.8);
    if (manifest.threshold_dbm) setup.detect.threshold_dbm = *manifest.threshold_dbm;

    setup.duration_s = ini.get_double("sim", "duration_s", 16.0);
    if (manifest.duration_s) setup.duration_s = *manifest.duration_s;
    setup.n_frames = static_cast<std::size_t>(ini.get_u64("sim", "n_frames", 0));
    if (manifest.n_frames) setup.n_frames = *manifest.n_frames;
    if (setup.n_frames == 0)
        setup.n_frames = static_cast<std::size_t>(
            std::ceil(setup.duration_s / setup.receiver.frame_interval_s));
    if (setup.n_frames == 0) throw std::invalid_argument("simulation needs at least one frame");
    return setup;
}

inline SimulationSetup load_simulation_setup(const RunManifest& manifest) {
    return load_simulation_setup(IniFile::parse_file(manifest.scene_path), manifest);
}

}  // namespace twr
