// units.hpp: physical constants and unit conversions.
//
// Internal unit system: hbar = 1, energies in micro-eV, time measured in
// units of hbar / (1 micro-eV) = 6.582e-10 s. Temperatures enter in mK and
// are converted to inverse energies, bath mode frequencies enter in MHz.

#pragma once

namespace decosim::units {

// 2018 CODATA exact values, expressed in the internal unit system.
inline constexpr double k_hbar_microeV_seconds = 6.582119569e-10;
inline constexpr double k_boltzmann_microeV_per_mK = 8.617333262e-2;
inline constexpr double k_time_unit_seconds = k_hbar_microeV_seconds;
inline constexpr double k_angular_MHz_to_microeV = k_hbar_microeV_seconds * 1.0e6;

// Frequencies quoted in MHz: "angular" reads the value as 1e6 rad/s,
// "cyclic" multiplies by 2*pi first.
enum class FreqConvention { angular, cyclic };

const char* to_string(FreqConvention c);
FreqConvention freq_convention_from_string(const char* s);

struct UnitSystem {
    double hbar_microeV_seconds = k_hbar_microeV_seconds;
    double boltzmann_microeV_per_mK = k_boltzmann_microeV_per_mK;
    double time_unit_seconds = k_time_unit_seconds;
    double angular_MHz_to_microeV = k_angular_MHz_to_microeV;
};

inline constexpr UnitSystem k_units{};

// beta = 1/(k_B T), in 1/micro-eV. T in mK, must be positive and finite.
double temperature_to_beta(double t_mK);
double beta_to_temperature(double beta);

// Mode frequency in MHz to energy in micro-eV (hbar = 1 makes them equal
// up to the conversion constant).
double mode_frequency_to_energy(double f_MHz, FreqConvention convention);
double energy_to_mode_frequency(double e_microeV, FreqConvention convention);

double time_to_seconds(double t_internal);
double seconds_to_time(double seconds);

inline double time_to_picoseconds(double t_internal) {
    return time_to_seconds(t_internal) * 1.0e12;
}

} // namespace decosim::units
