#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "twr/chirp.hpp"
#include "twr/constants.hpp"
#include "twr/scene.hpp"

namespace twr {

/// Receiver/ADC model for the de-chirped IF output.
struct ReceiverConfig {
    double sample_rate_hz = 24.32e6;
    std::size_t samples_per_frame = 0;  // 0 = one full chirp worth
    double frame_interval_s = 0.030;    // chirp repetition during a scenario
    double conversion_gain_db = 0.0;
    double if_bandwidth_hz = 12.0e6;
    int adc_bits = 0;                   // 0 = no quantization
    double adc_full_scale_v = 1.0;
};

inline void validate_receiver(const ReceiverConfig& rx) {
    if (rx.sample_rate_hz <= 0.0) throw std::invalid_argument("sample rate must be > 0");
    if (!(rx.sample_rate_hz > 2.0 * rx.if_bandwidth_hz))
        throw std::invalid_argument("sample rate must exceed twice the IF bandwidth");
    if (rx.frame_interval_s <= 0.0) throw std::invalid_argument("frame interval must be > 0");
    if (rx.samples_per_frame == 1) throw std::invalid_argument("samples_per_frame must be >= 2");
}

inline std::size_t default_samples_per_frame(const ChirpParams& chirp, const ReceiverConfig& rx) {
    return static_cast<std::size_t>(std::floor(chirp.duration_s * rx.sample_rate_hz));
}

/// Sampled de-chirped IF signal for a sequence of chirps. Samples are double
/// precision in memory; the trace file format stores float32, and replaying
/// an exported trace reproduces the exported grid bit-identically.
struct IfTrace {
    std::vector<std::vector<double>> frames;  // frames x samples, linear volts
    std::vector<double> t0_of_frame;         // scenario time of each chirp start
    ReceiverConfig config;
    ChirpParams chirp;

    std::size_t n_frames() const { return frames.size(); }
    std::size_t samples_per_frame() const { return frames.empty() ? 0 : frames.front().size(); }
};

/// De-chirped tone of one echo at intra-chirp time t:
///   b * cos(2*pi*(s*tau*t + f_c*tau - s*tau^2/2)).
/// The residual video phase term -s*tau^2/2 is kept so the IF phase is exact.
inline double if_tone(const ChirpParams& p, const EchoContribution& e, double t) {
    if (e.delay_s >= p.duration_s)
        throw std::out_of_range("if_tone: echo delay '" + e.path_label +
                                "' is at/beyond the chirp duration (target beyond the "
                                "unambiguous window)");
    if (t < e.delay_s || t > p.duration_s)
        throw std::out_of_range("if_tone: t outside the de-chirp overlap [tau, T]");
    const double phase = 2.0 * kPi * (p.slope_hz_per_s * e.delay_s * t +
                                      p.start_freq_hz * e.delay_s -
                                      0.5 * p.slope_hz_per_s * e.delay_s * e.delay_s);
    return e.if_amplitude_v * std::cos(phase);
}

namespace detail {

// Steady-state evaluation used inside frame synthesis: the tone model is
// extended across the whole frame so a static target yields a pure sinusoid.
inline double if_tone_value(const ChirpParams& p, double delay_s, double amplitude_v, double t) {
    const double phase = 2.0 * kPi * (p.slope_hz_per_s * delay_s * t + p.start_freq_hz * delay_s -
                                      0.5 * p.slope_hz_per_s * delay_s * delay_s);
    return amplitude_v * std::cos(phase);
}

// splitmix64: fully specified generator so noise is bit-reproducible
// independent of platform library internals.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in (0, 1]
    double next_unit() {
        return (static_cast<double>(next() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
    }
    // standard normal via Box-Muller
    double next_gaussian() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }
};

inline double quantize_sample(double v, int bits, double full_scale) {
    if (bits <= 0) return v;
    const double step = 2.0 * full_scale / static_cast<double>(1LL << bits);
    const double clamped = std::min(std::max(v, -full_scale), full_scale - step);
    return std::round(clamped / step) * step;
}

}  // namespace detail

/// Synthesize one frame at scenario time t0. Targets are frozen at their
/// t0 positions within the frame (stop-and-hop; at walking speeds the
/// intra-chirp range change is micrometres against a ~27 cm cell).
inline std::vector<double> synthesize_frame(const Scene& scene, const ChirpParams& chirp,
                                            const ReceiverConfig& rx, std::size_t n_samples,
                                            double t0, std::uint64_t frame_index) {
    // amplitude factor for the configured (power) conversion gain
    const double conv_gain = std::pow(10.0, rx.conversion_gain_db / 20.0);
    struct Path {
        double delay;
        double amplitude;
    };
    std::vector<Path> paths;
    paths.reserve(scene.reflectors.size());
    const double f_ref = chirp.center_freq_hz();
    for (const auto& r : scene.reflectors) {
        const double d = position_at(r.trajectory, t0);
        const double tau = round_trip_delay(d, scene.cable);
        if (tau >= chirp.duration_s)
            throw std::out_of_range("synthesize: reflector '" + r.label +
                                    "' delay reaches the chirp duration");
        const double p_dbm = scene_received_power_dbm(scene, chirp.tx_power_dbm, f_ref, r, d);
        paths.push_back({tau, conv_gain * dbm_to_amplitude(p_dbm)});
    }

    double noise_rms = 0.0;
    if (scene.noise.enabled) {
        // white over [0, fs/2] at the configured one-sided density
        const double watts = dbm_to_watts(scene.noise.density_dbm_per_hz) * rx.sample_rate_hz / 2.0;
        noise_rms = std::sqrt(watts * kReferenceOhms);
    }
    detail::SplitMix64 rng(scene.noise.seed + frame_index);

    std::vector<double> out(n_samples);
    const double dt = 1.0 / rx.sample_rate_hz;
    for (std::size_t n = 0; n < n_samples; ++n) {
        const double t = static_cast<double>(n) * dt;
        double v = 0.0;
        for (const auto& p : paths) v += detail::if_tone_value(chirp, p.delay, p.amplitude, t);
        if (noise_rms > 0.0) v += noise_rms * rng.next_gaussian();
        out[n] = detail::quantize_sample(v, rx.adc_bits, rx.adc_full_scale_v);
    }
    return out;
}

/// Synthesize n_frames chirps. Frames are independent and seeded per index,
/// so the result is identical for any worker count.
inline IfTrace synthesize(const Scene& scene, const ChirpParams& chirp, const ReceiverConfig& rx,
                          std::size_t n_frames, unsigned n_threads = 1) {
    validate_receiver(rx);
    const std::size_t spf =
        rx.samples_per_frame ? rx.samples_per_frame : default_samples_per_frame(chirp, rx);
    if (spf < 2) throw std::invalid_argument("synthesize: frame shorter than 2 samples");

    IfTrace trace;
    trace.config = rx;
    trace.config.samples_per_frame = spf;
    trace.chirp = chirp;
    trace.frames.resize(n_frames);
    trace.t0_of_frame.resize(n_frames);
    for (std::size_t k = 0; k < n_frames; ++k)
        trace.t0_of_frame[k] = static_cast<double>(k) * rx.frame_interval_s;

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k)
            trace.frames[k] = synthesize_frame(scene, chirp, rx, spf, trace.t0_of_frame[k], k);
    };
    if (n_threads <= 1 || n_frames < 2) {
        work(0, n_frames);
    } else {
        const unsigned workers = std::min<unsigned>(n_threads, static_cast<unsigned>(n_frames));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n_frames + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = static_cast<std::size_t>(w) * chunk;
            const std::size_t end = std::min(n_frames, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    return trace;
}

/// Round every sample through the float32 wire representation, in place.
/// A grid computed afterwards matches a replay of the exported file exactly.
inline void quantize_trace_to_wire(IfTrace& trace) {
    for (auto& frame : trace.frames)
        for (double& v : frame) v = static_cast<double>(static_cast<float>(v));
}

// ---------------------------------------------------------------------------
// Raw trace file format, header line "TWRIF1 <frames> <samples> <rate_hz>"
// followed by row-major little-endian float32 frame data.
// ---------------------------------------------------------------------------

inline void write_trace(const IfTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
    out << "TWRIF1 " << trace.n_frames() << ' ' << trace.samples_per_frame() << ' '
        << static_cast<std::uint64_t>(trace.config.sample_rate_hz) << '\n';
    std::vector<float> row;
    for (const auto& frame : trace.frames) {
        row.assign(frame.begin(), frame.end());
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out) throw std::runtime_error("short write on trace file: " + path);
}

inline IfTrace read_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("trace " + path + ": missing header line (offset 0)");
    std::istringstream hs(header);
    std::string magic;
    std::uint64_t frames = 0, samples = 0, rate = 0;
    if (!(hs >> magic) || magic != "TWRIF1")
        throw std::runtime_error("trace " + path + ": bad magic at offset 0 (expected TWRIF1)");
    if (!(hs >> frames >> samples >> rate) || samples < 2 || rate == 0)
        throw std::runtime_error("trace " + path + ": malformed header fields after offset 7");

    IfTrace trace;
    trace.config.sample_rate_hz = static_cast<double>(rate);
    trace.config.samples_per_frame = samples;
    // Replayed traces carry no repetition metadata; assume back-to-back frames.
    trace.config.frame_interval_s = static_cast<double>(samples) / static_cast<double>(rate);
    trace.frames.assign(frames, std::vector<double>(samples));
    trace.t0_of_frame.resize(frames);
    std::vector<float> row(samples);
    for (std::uint64_t k = 0; k < frames; ++k) {
        trace.t0_of_frame[k] = static_cast<double>(k) * trace.config.frame_interval_s;
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(samples * sizeof(float)));
        if (!in)
            throw std::runtime_error("trace " + path + ": truncated frame data at frame " +
                                     std::to_string(k));
        trace.frames[k].assign(row.begin(), row.end());
    }
    return trace;
}

}  // namespace twr
