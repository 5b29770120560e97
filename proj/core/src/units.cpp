#include "decosim/units.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace decosim::units {

const char* to_string(FreqConvention c) {
    return c == FreqConvention::angular ? "angular" : "cyclic";
}

FreqConvention freq_convention_from_string(const char* s) {
    if (std::strcmp(s, "angular") == 0) return FreqConvention::angular;
    if (std::strcmp(s, "cyclic") == 0) return FreqConvention::cyclic;
    throw std::domain_error("freq_convention must be 'angular' or 'cyclic'");
}

double temperature_to_beta(double t_mK) {
    if (!std::isfinite(t_mK) || t_mK <= 0.0)
        throw std::domain_error("temperature_to_beta: T must be positive and finite");
    return 1.0 / (k_boltzmann_microeV_per_mK * t_mK);
}

double beta_to_temperature(double beta) {
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::domain_error("beta_to_temperature: beta must be positive and finite");
    return 1.0 / (k_boltzmann_microeV_per_mK * beta);
}

double mode_frequency_to_energy(double f_MHz, FreqConvention convention) {
    if (!std::isfinite(f_MHz) || f_MHz <= 0.0)
        throw std::domain_error("mode_frequency_to_energy: frequency must be positive and finite");
    const double factor = convention == FreqConvention::angular
                              ? k_angular_MHz_to_microeV
                              : 2.0 * std::numbers::pi * k_angular_MHz_to_microeV;
    return f_MHz * factor;
}

double energy_to_mode_frequency(double e_microeV, FreqConvention convention) {
    if (!std::isfinite(e_microeV) || e_microeV <= 0.0)
        throw std::domain_error("energy_to_mode_frequency: energy must be positive and finite");
    const double factor = convention == FreqConvention::angular
                              ? k_angular_MHz_to_microeV
                              : 2.0 * std::numbers::pi * k_angular_MHz_to_microeV;
    return e_microeV / factor;
}

double time_to_seconds(double t_internal) {
    if (!std::isfinite(t_internal))
        throw std::domain_error("time_to_seconds: time must be finite");
    return t_internal * k_time_unit_seconds;
}

double seconds_to_time(double seconds) {
    if (!std::isfinite(seconds))
        throw std::domain_error("seconds_to_time: time must be finite");
    return seconds / k_time_unit_seconds;
}

} // namespace decosim::units
