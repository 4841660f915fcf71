// units.hpp — unit system: energies in cm^-1, times in ps, temperatures in K
//
// hbar = 1 throughout; the single conversion that matters is
// 1 cm^-1 = 2*pi*c rad/ps with c in cm/ps.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace exvib::units {

// speed of light in cm per ps
inline constexpr double speed_of_light = 0.0299792458;

// Boltzmann constant in cm^-1 per K
inline constexpr double boltzmann = 0.6950348;

// rad/ps carried by 1 cm^-1
inline constexpr double radians_per_ps_per_wavenumber =
    2.0 * std::numbers::pi * speed_of_light;

inline constexpr double wavenumber_to_angular(double wavenumber) {
    return radians_per_ps_per_wavenumber * wavenumber;
}

inline constexpr double angular_to_wavenumber(double radians_per_ps) {
    return radians_per_ps / radians_per_ps_per_wavenumber;
}

// inverse temperature in (cm^-1)^-1
inline double thermal_beta(double temperature_kelvin) {
    if (!(temperature_kelvin > 0.0)) {
        throw std::domain_error("thermal_beta: temperature must be > 0 K");
    }
    return 1.0 / (boltzmann * temperature_kelvin);
}

inline double thermal_energy(double temperature_kelvin) {
    if (!(temperature_kelvin > 0.0)) {
        throw std::domain_error("thermal_energy: temperature must be > 0 K");
    }
    return boltzmann * temperature_kelvin;
}

} // namespace exvib::units
