#pragma once

// Pinned physical constants (SI). Every unit conversion in the library goes
// through these values.
namespace edeco::constants {

inline constexpr double hbar = 1.054571817e-34;           // J s
inline constexpr double electron_volt = 1.602176634e-19;  // J
inline constexpr double speed_of_light = 299792458.0;     // m/s
inline constexpr double planck_time = 5.391247e-44;       // s
inline constexpr double julian_year = 365.25 * 86400.0;   // s

inline constexpr double pi = 3.14159265358979323846;

/// Angular frequency (rad/s) of an energy gap given in eV.
constexpr double angular_frequency_ev(double energy_ev) {
  return energy_ev * electron_volt / hbar;
}

}  // namespace edeco::constants
