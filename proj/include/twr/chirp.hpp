#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "twr/constants.hpp"

namespace twr {

/// Linear FM up-chirp definition. Immutable once built; either the sweep
/// slope or the modulation time may be supplied and the other is derived,
/// so slope == bandwidth/duration always holds.
struct ChirpParams {
    double start_freq_hz = 0.0;      // sweep start f_c
    double bandwidth_hz = 0.0;       // swept bandwidth B
    double duration_s = 0.0;         // modulation time T
    double slope_hz_per_s = 0.0;     // B / T
    double initial_phase_rad = 0.0;
    double tx_power_dbm = 0.0;
    double tx_amplitude_v = 0.0;     // peak volts into the reference load

    double center_freq_hz() const { return start_freq_hz + 0.5 * bandwidth_hz; }
};

/// One de-chirped echo: round-trip delay plus the received and mixer-output
/// amplitudes. if_amplitude = conversion_gain * amplitude.
struct EchoContribution {
    double delay_s = 0.0;
    double amplitude_v = 0.0;
    double if_amplitude_v = 0.0;
    std::string path_label;
};

inline EchoContribution make_echo(double delay_s, double amplitude_v,
                                  std::string path_label = {},
                                  double conversion_gain = 1.0) {
    if (delay_s < 0.0) throw std::invalid_argument("echo delay must be >= 0");
    if (amplitude_v < 0.0) throw std::invalid_argument("echo amplitude must be >= 0");
    EchoContribution e;
    e.delay_s = delay_s;
    e.amplitude_v = amplitude_v;
    e.if_amplitude_v = conversion_gain * amplitude_v;
    e.path_label = std::move(path_label);
    return e;
}

inline ChirpParams make_chirp(double start_freq_hz, double bandwidth_hz, double duration_s,
                              double initial_phase_rad = 0.0, double tx_power_dbm = 0.0) {
    if (start_freq_hz <= 0.0) throw std::invalid_argument("chirp start frequency must be > 0");
    if (bandwidth_hz <= 0.0) throw std::invalid_argument("chirp bandwidth must be > 0");
    if (duration_s <= 0.0) throw std::invalid_argument("chirp duration must be > 0");
    ChirpParams p;
    p.start_freq_hz = start_freq_hz;
    p.bandwidth_hz = bandwidth_hz;
    p.duration_s = duration_s;
    p.slope_hz_per_s = bandwidth_hz / duration_s;
    p.initial_phase_rad = initial_phase_rad;
    p.tx_power_dbm = tx_power_dbm;
    p.tx_amplitude_v = dbm_to_amplitude(tx_power_dbm);
    return p;
}

/// Same as make_chirp but with the sweep slope given; T = B / s.
inline ChirpParams make_chirp_from_slope(double start_freq_hz, double bandwidth_hz,
                                         double slope_hz_per_s, double initial_phase_rad = 0.0,
                                         double tx_power_dbm = 0.0) {
    if (slope_hz_per_s <= 0.0) throw std::invalid_argument("chirp slope must be > 0");
    return make_chirp(start_freq_hz, bandwidth_hz, bandwidth_hz / slope_hz_per_s,
                      initial_phase_rad, tx_power_dbm);
}

/// Transmit phase argument at time t (radians), valid on [0, T].
inline double tx_phase(const ChirpParams& p, double t) {
    return 2.0 * kPi * (p.start_freq_hz * t + 0.5 * p.slope_hz_per_s * t * t) +
           p.initial_phase_rad;
}

/// Instantaneous transmit amplitude a0*cos(2*pi*(f_c*t + s*t^2/2) + phi0).
inline double tx_waveform(const ChirpParams& p, double t) {
    if (t < 0.0 || t > p.duration_s)
        throw std::out_of_range("tx_waveform: t outside the chirp window [0, T]");
    return p.tx_amplitude_v * std::cos(tx_phase(p, t));
}

/// Instantaneous frequency f_c + s*t of the sweep, valid on [0, T].
inline double instantaneous_frequency(const ChirpParams& p, double t) {
    if (t < 0.0 || t > p.duration_s)
        throw std::out_of_range("instantaneous_frequency: t outside the chirp window [0, T]");
    return p.start_freq_hz + p.slope_hz_per_s * t;
}

/// Beat frequency of an echo delayed by tau: f_b = s * tau.
inline double beat_frequency(double slope_hz_per_s, double delay_s) {
    if (delay_s < 0.0) throw std::invalid_argument("beat_frequency: delay must be >= 0");
    return slope_hz_per_s * delay_s;
}

/// Two-point range resolution c / (2B).
inline double range_resolution(double bandwidth_hz) {
    if (bandwidth_hz <= 0.0) throw std::invalid_argument("range_resolution: bandwidth must be > 0");
    return kSpeedOfLight / (2.0 * bandwidth_hz);
}

// Radar-on-chip sweep presets. The chip's FMCW mode is quoted both as
// 2.052-2.6 GHz (548 MHz, the sweep actually driven during the recorded
// runs) and 2.05-2.6 GHz (550 MHz nominal); both are kept, same 11.2 MHz/us
// slope and 0 dBm output.
inline ChirpParams radar_preset(const std::string& name) {
    constexpr double kRocSlope = 11.2e12;  // 11.2 MHz/us
    if (name == "roc-operational")
        return make_chirp_from_slope(2.052e9, 548e6, kRocSlope, 0.0, 0.0);
    if (name == "roc-nominal")
        return make_chirp_from_slope(2.05e9, 550e6, kRocSlope, 0.0, 0.0);
    throw std::invalid_argument("unknown radar preset: " + name);
}

}  // namespace twr
