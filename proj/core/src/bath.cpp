#include "decosim/bath.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace decosim::bath {

const char* to_string(CutoffSign s) {
    return s == CutoffSign::paper_literal ? "paper_literal" : "standard";
}

CutoffSign cutoff_sign_from_string(const char* s) {
    if (std::strcmp(s, "paper_literal") == 0) return CutoffSign::paper_literal;
    if (std::strcmp(s, "standard") == 0) return CutoffSign::standard;
    throw std::domain_error("cutoff_sign must be 'paper_literal' or 'standard'");
}

double ohmic_weight(double omega, const OhmicSpec& spec) {
    if (!std::isfinite(omega) || omega <= 0.0)
        throw std::domain_error("ohmic_weight: omega must be positive");
    const double sign = spec.cutoff_sign == CutoffSign::paper_literal ? 1.0 : -1.0;
    return spec.eta * omega * std::exp(sign * omega / spec.omega_c);
}

double damping_eta(double r_ohm, double c_t_farad, double c_j_farad) {
    if (!(r_ohm > 0.0) || !(c_t_farad > 0.0) || !(c_j_farad > 0.0))
        throw std::domain_error("damping_eta: R, C_t, C_J must all be positive");
    constexpr double planck_Js = 6.62607015e-34;
    constexpr double elementary_charge_C = 1.602176634e-19;
    constexpr double r_q = planck_Js / (4.0 * elementary_charge_C * elementary_charge_C);
    const double ratio = c_t_farad / c_j_farad;
    return (r_ohm / r_q) * ratio * ratio;
}

double coupling_from_ohmic(double omega_j, const OhmicSpec& spec) {
    if (!std::isfinite(omega_j) || omega_j <= 0.0)
        throw std::domain_error("coupling_from_ohmic: omega must be positive");
    if (spec.eta < 0.0)
        throw std::domain_error("coupling_from_ohmic: eta must be non-negative");
    const double sign = spec.cutoff_sign == CutoffSign::paper_literal ? 1.0 : -1.0;
    return 0.5 * std::sqrt(spec.eta) * std::exp(sign * omega_j / (2.0 * spec.omega_c));
}

Spec build_bath(int n0, int n, double f_low_MHz, double f_high_MHz, double t_mK,
                const OhmicSpec& ohmic, units::FreqConvention convention,
                std::span<const double> g_prime_override) {
    if (n0 < 1 || n < n0)
        throw std::domain_error("build_bath: mode indices must satisfy N >= N0 >= 1");
    if (!(f_low_MHz > 0.0) || f_low_MHz > f_high_MHz)
        throw std::domain_error("build_bath: frequencies must satisfy 0 < f_low <= f_high");
    if (ohmic.eta < 0.0)
        throw std::domain_error("build_bath: eta must be non-negative");
    if (!(ohmic.omega_c > 0.0))
        throw std::domain_error("build_bath: omega_c must be positive");
    const std::size_t num_modes = static_cast<std::size_t>(n - n0 + 1);
    if (!g_prime_override.empty() && g_prime_override.size() != num_modes)
        throw std::domain_error("build_bath: g_prime_override must list one value per mode (" +
                                std::to_string(num_modes) + " expected)");

    Spec spec;
    spec.n0 = n0;
    spec.n = n;
    spec.beta = units::temperature_to_beta(t_mK);
    spec.temperature_mK = t_mK;
    spec.ohmic = ohmic;
    spec.modes.reserve(num_modes);
    for (int j = n0; j <= n; ++j) {
        const double f = n == n0 ? f_low_MHz
                                 : f_low_MHz + (f_high_MHz - f_low_MHz) *
                                       static_cast<double>(j - n0) / static_cast<double>(n - n0);
        Mode mode;
        mode.index = j;
        mode.omega = units::mode_frequency_to_energy(f, convention);
        mode.g_prime = g_prime_override.empty()
                           ? coupling_from_ohmic(mode.omega, ohmic)
                           : g_prime_override[static_cast<std::size_t>(j - n0)];
        mode.omega_prime = mode.omega + mode.g_prime;
        spec.modes.push_back(mode);
    }
    return spec;
}

Spec make_bath_from_modes(std::vector<Mode> modes, double beta) {
    Spec spec;
    spec.beta = beta;
    spec.temperature_mK = units::beta_to_temperature(beta);
    spec.n0 = modes.empty() ? 1 : modes.front().index;
    spec.n = modes.empty() ? 1 : modes.back().index;
    spec.modes = std::move(modes);
    for (const Mode& m : spec.modes) {
        if (!(m.omega > 0.0))
            throw std::domain_error("make_bath_from_modes: omega must be positive");
    }
    return spec;
}

Complex mode_trace_factor(double omega, double g_prime, double beta, int chi_diff, double t) {
    if (!std::isfinite(t)) throw std::domain_error("mode_trace_factor: time must be finite");
    if (chi_diff == 0) return {1.0, 0.0};
    const double x = -beta * omega;
    const double phi = g_prime * static_cast<double>(chi_diff) * t;
    // numerator 1 - e^x, denominator 1 - e^{x + i phi}, both via expm1 so the
    // near-cancellation at small beta*omega keeps full relative accuracy.
    const double num = -std::expm1(x);
    const double ex = std::exp(x);
    const double sh = std::sin(0.5 * phi);
    const Complex den{-std::expm1(x) + 2.0 * ex * sh * sh, -ex * std::sin(phi)};
    return num / den;
}

Complex bath_trace_factor(const Spec& spec, int chi_xi, int chi_sigma, double t) {
    if (std::abs(chi_xi) != 1 || std::abs(chi_sigma) != 1)
        throw std::domain_error("bath_trace_factor: chi values must be +-1");
    const int chi_diff = chi_sigma - chi_xi;
    if (chi_diff == 0) return {1.0, 0.0};
    Complex product{1.0, 0.0};
    for (const Mode& m : spec.modes)
        product *= mode_trace_factor(m.omega, m.g_prime, spec.beta, chi_diff, t);
    return product;
}

WFactors w_factors(const Spec& spec, double t) {
    WFactors w;
    w.w1 = bath_trace_factor(spec, -1, +1, t);
    // The chi_diff = -2 product is the term-by-term conjugate of the +2 one.
    w.w2 = std::conj(w.w1);
    return w;
}

} // namespace decosim::bath
