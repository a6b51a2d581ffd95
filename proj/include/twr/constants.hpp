#pragma once

#include <cmath>

namespace twr {

// Shared physical constants. Every range/delay conversion in the library
// goes through kSpeedOfLight so results stay consistent across modules.
inline constexpr double kSpeedOfLight = 2.9979e8;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

// All power levels are referred to this load impedance.
inline constexpr double kReferenceOhms = 50.0;

// dBm value used for bins whose linear power underflows (log of zero).
inline constexpr double kNumericFloorDbm = -400.0;

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double watts_to_dbm(double watts) {
    if (watts <= 0.0) return kNumericFloorDbm;
    return 10.0 * std::log10(watts) + 30.0;
}

// Peak amplitude of a sinusoid carrying the given power into the reference load.
inline double dbm_to_amplitude(double dbm) {
    return std::sqrt(2.0 * kReferenceOhms * dbm_to_watts(dbm));
}

inline double amplitude_to_dbm(double amplitude) {
    return watts_to_dbm(amplitude * amplitude / (2.0 * kReferenceOhms));
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) {
    if (x <= 0.0) return kNumericFloorDbm;
    return 10.0 * std::log10(x);
}

}  // namespace twr
