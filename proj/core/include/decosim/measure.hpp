// measure.hpp: deviation-operator decoherence measure.
//
// The deviation sigma(t) = rho(t) - rho_ideal(t) is traceless Hermitian; its
// lambda norm sqrt(sigma11^2 + |sigma10|^2) equals the spectral radius. D(t)
// is the supremum of that norm over pure initial states, searched on a Bloch
// grid (eigenbasis angles) with local refinement; the three preset states
// are always included as candidates, so D(t) dominates them exactly.

#pragma once

#include <optional>
#include <vector>

#include "decosim/propagation.hpp"
#include "decosim/qubit.hpp"
#include "decosim/types.hpp"

namespace decosim::measure {

// Traceless Hermitian 2x2: sigma00 is kept for the tracelessness diagnostic.
struct Deviation {
    double sigma00 = 0.0;
    double sigma11 = 0.0;
    Complex sigma10{0.0, 0.0};
};

Deviation deviation(const qubit::DensityMatrix2& real_rho, const qubit::DensityMatrix2& ideal_rho);

// sqrt(sigma11^2 + |sigma10|^2); the spectral radius for traceless Hermitian input.
double lambda_norm(const Deviation& sigma);

struct SearchPolicy {
    int theta_points = 64;       // coarse polar grid on [0, pi]
    int phi_points = 128;        // coarse azimuthal grid on [0, 2pi)
    int refinement_rounds = 3;   // local zoom rounds around the running best
    int zoom = 4;                // window shrink factor per round
    int refine_points = 9;       // sub-grid points per axis and round
    // Candidates within this relative margin of the running best are treated
    // as ties and the earlier (theta, phi) kept; the margin sits far above
    // kernel rounding (~1e-14) and far below genuine grid-cell differences.
    double tie_rel_tol = 1e-11;
};

struct DeviationReport {
    double t = 0.0;
    double sigma11 = 0.0;
    Complex sigma10{0.0, 0.0};
    double norm = 0.0;
    std::optional<qubit::PureState2> argmax_state;
    double argmax_theta = 0.0;
    double argmax_phi = 0.0;
};

// sigma(rho0) at fixed context and time, with the propagator cached so Bloch
// scans amortize the kernel construction.
class DeviationMap {
  public:
    DeviationMap(const prop::Context& ctx, double t);

    Deviation apply(const qubit::DensityMatrix2& rho0) const;
    double norm_of(const qubit::DensityMatrix2& rho0) const;
    double norm_of_state(const qubit::PureState2& s) const;

    double time() const { return split_.time(); }
    const prop::SplitPropagator& propagator() const { return split_; }

  private:
    prop::SplitPropagator split_;
};

// Deviation norm for one initial state (eigenbasis amplitudes).
DeviationReport norm_at(const prop::Context& ctx, const qubit::PureState2& state, double t);

// Maximal deviation norm over pure initial states.
DeviationReport d_of_t(const prop::Context& ctx, double t, const SearchPolicy& policy = {});
DeviationReport d_of_t_with_map(const DeviationMap& map, const SearchPolicy& policy = {});

// First time D(t) reaches threshold, from a coarse scan over (0, horizon]
// plus bisection to 1e-3 relative precision; empty when no crossing occurs.
std::optional<double> low_decoherence_time(const prop::Context& ctx, double threshold,
                                           double horizon, const SearchPolicy& policy = {},
                                           int coarse_points = 256);

struct ScanResult {
    std::vector<double> t_grid;
    // per_state_norms[s][i]: deviation norm of preset state s at t_grid[i]
    std::vector<std::vector<double>> per_state_norms;
    std::vector<double> d_of_t;
    std::optional<double> t_ld;
    double threshold = 1e-4;
};

// Norms of the three preset states plus D(t) on a time grid; grid points are
// evaluated in parallel and merged in index order.
ScanResult scan(const prop::Context& ctx, const std::vector<double>& t_grid, double threshold,
                const SearchPolicy& policy = {});

} // namespace decosim::measure
