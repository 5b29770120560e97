// oracle.hpp: independent references for the closed-form machinery.
//
// Every bath occupation number commutes with the full Hamiltonian, so the
// model is exactly solvable sector by sector: each occupation configuration
// {n_j} evolves the qubit under a fixed 2x2 Hamiltonian and the thermal
// average is a weighted sum over configurations. That average, the truncated
// thermal series for the bath factors, and a Trotter-order fit form the
// validation suite for the split-propagator path.

#pragma once

#include <cstdint>
#include <span>

#include "decosim/propagation.hpp"
#include "decosim/qubit.hpp"
#include "decosim/types.hpp"

namespace decosim::oracle {

enum class SamplerMode { enumerate_sectors, monte_carlo };

const char* to_string(SamplerMode m);
SamplerMode sampler_mode_from_string(const char* s);

struct SectorSampler {
    SamplerMode mode = SamplerMode::enumerate_sectors;
    int n_max = 40;             // per-mode occupation cutoff for enumeration
    long samples = 100000;      // Monte Carlo draws
    std::uint64_t seed = 12345;
};

// Truncated thermal series for one mode's trace factor:
//   sum_{n=0}^{n_max} (1 - e^{-beta omega}) e^{-beta omega n} e^{i g' chi_diff n t}.
// n_max is raised automatically until the dropped tail is below 1e-14. Terms
// are computed independently and summed in extended precision, so the result
// shares no arithmetic with the closed-form evaluation it checks.
Complex bath_factor_series(double omega, double g_prime, double beta, int chi_diff, double t,
                           long n_max);

struct ExactDensityResult {
    qubit::DensityMatrix2 rho;  // eigenbasis components, like reduced_density
    bool sampled = false;
    // Standard errors (Monte Carlo only; zero when enumerated).
    double se_rho00 = 0.0;
    double se_rho11 = 0.0;
    double se_rho10_re = 0.0;
    double se_rho10_im = 0.0;
};

// Thermal average of the exactly evolved qubit state. Enumeration walks all
// occupation tuples with n_j <= n_max (rejected above 1e7 configurations);
// Monte Carlo draws occupations from the per-mode geometric distribution via
// inverse CDF, deterministically from the seed.
ExactDensityResult exact_reduced_density(const prop::Context& ctx,
                                         const qubit::DensityMatrix2& rho0, double t,
                                         const SectorSampler& sampler);

struct OrderFit {
    bool conclusive = false;
    double slope = 0.0;
    int points_used = 0;
};

// Least-squares slope of log ||rho_split - rho_exact|| against log t,
// excluding points below the 1e-13 numerical floor. Fewer than 4 usable
// points leaves the fit inconclusive (e.g. exact splitting at zero coupling).
OrderFit trotter_order_fit(const prop::Context& ctx, const qubit::DensityMatrix2& rho0,
                           std::span<const double> t_values,
                           const SectorSampler& sampler = {});

} // namespace decosim::oracle
