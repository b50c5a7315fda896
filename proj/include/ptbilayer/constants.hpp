#pragma once

#include <complex>

namespace ptbilayer {

using cplx = std::complex<double>;

namespace constants {

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J/K
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace constants

namespace units {

// Config files speak Trad/s and nm; everything internal is SI.
inline constexpr double kTradPerSecond = 1e12;
inline constexpr double kNanometre = 1e-9;

inline constexpr double trad_to_rad(double trad) { return trad * kTradPerSecond; }
inline constexpr double rad_to_trad(double rad) { return rad / kTradPerSecond; }
inline constexpr double nm_to_m(double nm) { return nm * kNanometre; }

}  // namespace units

/// Free-space wavenumber omega/c.
inline constexpr double vacuum_wavenumber(double omega) {
  return omega / constants::kSpeedOfLight;
}

}  // namespace ptbilayer
