// bath.hpp: finite bosonic bath with number-conserving (dephasing) coupling.
//
// The bath is a list of modes (omega_j, g'_j, omega'_j) held in a thermal
// state at inverse temperature beta. Couplings follow the ohmic prescription
// g'(omega) = (1/2) sqrt(eta) exp(+-omega / 2 omega_c); the exponent sign is
// selectable because the growing form, while unusual, is the literal one
// used here (see CutoffSign).

#pragma once

#include <span>
#include <vector>

#include "decosim/types.hpp"
#include "decosim/units.hpp"

namespace decosim::bath {

// Sign of the exponent in the ohmic cutoff: paper_literal keeps the growing
// exponential exp(+omega/omega_c); standard uses the conventional decaying
// exp(-omega/omega_c).
enum class CutoffSign { paper_literal, standard };

const char* to_string(CutoffSign s);
CutoffSign cutoff_sign_from_string(const char* s);

struct OhmicSpec {
    double eta = 0.0;      // dimensionless damping coefficient
    double omega_c = 0.0;  // cutoff, micro-eV
    CutoffSign cutoff_sign = CutoffSign::paper_literal;
};

struct Mode {
    int index = 0;
    double omega = 0.0;        // bare frequency, micro-eV
    double g_prime = 0.0;      // dephasing coupling, micro-eV
    double omega_prime = 0.0;  // shifted frequency omega + g_prime, micro-eV
};

struct Spec {
    std::vector<Mode> modes;   // sorted by increasing omega
    double beta = 0.0;         // 1/micro-eV
    double temperature_mK = 0.0;
    OhmicSpec ohmic;
    int n0 = 1;
    int n = 1;
};

// eta * omega * exp(+-omega/omega_c), the coupling-weighted density of states.
double ohmic_weight(double omega, const OhmicSpec& spec);

// eta = (R/R_Q) (C_t/C_J)^2 with the superconducting resistance quantum
// R_Q = h/(2e)^2.
double damping_eta(double r_ohm, double c_t_farad, double c_j_farad);

// g'(omega_j) = (1/2) sqrt(eta) exp(+-omega_j / 2 omega_c). The value is
// dimensionless as written; it is read as micro-eV in the internal units.
double coupling_from_ohmic(double omega_j, const OhmicSpec& spec);

// Modes j = n0..n on a linear frequency grid from f_low to f_high (MHz),
// couplings from the ohmic spec unless g_prime_override supplies one value
// per mode.
Spec build_bath(int n0, int n, double f_low_MHz, double f_high_MHz, double t_mK,
                const OhmicSpec& ohmic, units::FreqConvention convention,
                std::span<const double> g_prime_override = {});

// Assembles a Spec straight from mode data; used by oracles and tests that
// need baths outside the MHz grid.
Spec make_bath_from_modes(std::vector<Mode> modes, double beta);

// Thermal trace of one mode's dephasing phase:
//   (1 - e^{-beta omega}) / (1 - e^{i g' (chi_s - chi_x) t} e^{-beta omega}).
// Evaluated in expm1 form so small beta*omega and small g' t stay accurate.
Complex mode_trace_factor(double omega, double g_prime, double beta, int chi_diff, double t);

// Product of mode_trace_factor over all modes; equals 1 exactly when
// chi_xi == chi_sigma, and has modulus <= 1 always.
Complex bath_trace_factor(const Spec& spec, int chi_xi, int chi_sigma, double t);

struct WFactors {
    Complex w1{1.0, 0.0};  // chi_sigma - chi_xi = +2
    Complex w2{1.0, 0.0};  // chi_sigma - chi_xi = -2; always conj(w1)
};

WFactors w_factors(const Spec& spec, double t);

} // namespace decosim::bath
