#include "decosim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "decosim/parallel.hpp"

namespace decosim::measure {

namespace {

constexpr double k_pi = std::numbers::pi;
constexpr double k_two_pi = 2.0 * std::numbers::pi;

struct BestPoint {
    double norm = -1.0;
    double theta = 0.0;
    double phi = 0.0;
    std::optional<qubit::PureState2> state;
};

bool improves(double candidate, const BestPoint& best, double tie_rel_tol) {
    return candidate > best.norm + tie_rel_tol * std::max(candidate, best.norm);
}

} // namespace

Deviation deviation(const qubit::DensityMatrix2& real_rho, const qubit::DensityMatrix2& ideal_rho) {
    Deviation sigma;
    sigma.sigma00 = real_rho.rho00 - ideal_rho.rho00;
    sigma.sigma11 = real_rho.rho11 - ideal_rho.rho11;
    sigma.sigma10 = real_rho.rho10 - ideal_rho.rho10;
    return sigma;
}

double lambda_norm(const Deviation& sigma) {
    return std::hypot(sigma.sigma11, sigma.sigma10.real(), sigma.sigma10.imag());
}

DeviationMap::DeviationMap(const prop::Context& ctx, double t) : split_(ctx, t) {}

Deviation DeviationMap::apply(const qubit::DensityMatrix2& rho0) const {
    const qubit::DensityMatrix2 evolved = split_.apply(rho0);
    const qubit::DensityMatrix2 ideal =
        prop::ideal_density_from_splitting(split_.level_splitting(), rho0, split_.time());
    return deviation(evolved, ideal);
}

double DeviationMap::norm_of(const qubit::DensityMatrix2& rho0) const {
    return lambda_norm(apply(rho0));
}

double DeviationMap::norm_of_state(const qubit::PureState2& s) const {
    return norm_of(qubit::DensityMatrix2::from_pure(s));
}

DeviationReport norm_at(const prop::Context& ctx, const qubit::PureState2& state, double t) {
    const DeviationMap map(ctx, t);
    const Deviation sigma = map.apply(qubit::DensityMatrix2::from_pure(state));
    DeviationReport report;
    report.t = t;
    report.sigma11 = sigma.sigma11;
    report.sigma10 = sigma.sigma10;
    report.norm = lambda_norm(sigma);
    return report;
}

DeviationReport d_of_t_with_map(const DeviationMap& map, const SearchPolicy& policy) {
    if (policy.theta_points < 2 || policy.phi_points < 1)
        throw std::domain_error("d_of_t: Bloch grid must have at least 2x1 points");

    BestPoint best;

    // Preset states first: the supremum must dominate them, and seeding makes
    // that exact rather than up to grid resolution.
    const auto presets = qubit::preset_states();
    const double preset_angles[3][2] = {{0.0, 0.0}, {2.0 * k_pi / 6.0, 0.0}, {0.5 * k_pi, 0.0}};
    for (std::size_t s = 0; s < presets.size(); ++s) {
        const double norm = map.norm_of_state(presets[s]);
        if (improves(norm, best, policy.tie_rel_tol)) {
            best = {norm, preset_angles[s][0], preset_angles[s][1], presets[s]};
        }
    }

    // Coarse rectangle, evaluated in parallel and reduced in (theta, phi) order.
    const std::size_t nt = static_cast<std::size_t>(policy.theta_points);
    const std::size_t np = static_cast<std::size_t>(policy.phi_points);
    const double dtheta = k_pi / static_cast<double>(nt - 1);
    const double dphi = k_two_pi / static_cast<double>(np);
    std::vector<double> norms(nt * np);
    par::parallel_for(nt, [&](std::size_t i) {
        const double theta = static_cast<double>(i) * dtheta;
        for (std::size_t j = 0; j < np; ++j) {
            const double phi = static_cast<double>(j) * dphi;
            norms[i * np + j] = map.norm_of_state(qubit::state_from_bloch(theta, phi));
        }
    });
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < np; ++j) {
            const double norm = norms[i * np + j];
            if (improves(norm, best, policy.tie_rel_tol)) {
                best = {norm, static_cast<double>(i) * dtheta, static_cast<double>(j) * dphi,
                        std::nullopt};
            }
        }

    // Local refinement around the running best.
    double half_t = dtheta;
    double half_p = dphi;
    const int rp = std::max(3, policy.refine_points);
    for (int round = 0; round < policy.refinement_rounds; ++round) {
        const double t0 = std::max(0.0, best.theta - half_t);
        const double t1 = std::min(k_pi, best.theta + half_t);
        const double p0 = best.phi - half_p;
        for (int i = 0; i < rp; ++i) {
            const double theta = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(rp - 1);
            for (int j = 0; j < rp; ++j) {
                double phi = p0 + 2.0 * half_p * static_cast<double>(j) / static_cast<double>(rp - 1);
                phi = std::fmod(phi + k_two_pi, k_two_pi);
                const double norm = map.norm_of_state(qubit::state_from_bloch(theta, phi));
                if (improves(norm, best, policy.tie_rel_tol)) best = {norm, theta, phi, std::nullopt};
            }
        }
        half_t /= static_cast<double>(policy.zoom);
        half_p /= static_cast<double>(policy.zoom);
    }

    const qubit::PureState2 argmax =
        best.state ? *best.state : qubit::state_from_bloch(best.theta, best.phi);
    const Deviation sigma = map.apply(qubit::DensityMatrix2::from_pure(argmax));

    DeviationReport report;
    report.t = map.time();
    report.sigma11 = sigma.sigma11;
    report.sigma10 = sigma.sigma10;
    report.norm = best.norm;
    report.argmax_state = argmax;
    report.argmax_theta = best.theta;
    report.argmax_phi = best.phi;
    return report;
}

DeviationReport d_of_t(const prop::Context& ctx, double t, const SearchPolicy& policy) {
    return d_of_t_with_map(DeviationMap(ctx, t), policy);
}

std::optional<double> low_decoherence_time(const prop::Context& ctx, double threshold,
                                           double horizon, const SearchPolicy& policy,
                                           int coarse_points) {
    if (!(threshold > 0.0)) throw std::domain_error("low_decoherence_time: threshold must be positive");
    if (!(horizon > 0.0)) throw std::domain_error("low_decoherence_time: horizon must be positive");
    if (coarse_points < 2) throw std::domain_error("low_decoherence_time: need at least 2 coarse points");

    const auto d_at = [&](double t) { return d_of_t(ctx, t, policy).norm; };

    // March the coarse grid until the first up-crossing bracket; D(0) = 0.
    double lo = 0.0;
    double hi = 0.0;
    bool bracketed = false;
    for (int i = 1; i <= coarse_points; ++i) {
        const double t = horizon * static_cast<double>(i) / static_cast<double>(coarse_points);
        if (d_at(t) >= threshold) {
            hi = t;
            bracketed = true;
            break;
        }
        lo = t;
    }
    if (!bracketed) return std::nullopt;

    while (hi - lo > 1.0e-3 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (d_at(mid) >= threshold)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

ScanResult scan(const prop::Context& ctx, const std::vector<double>& t_grid, double threshold,
                const SearchPolicy& policy) {
    ScanResult result;
    result.t_grid = t_grid;
    result.threshold = threshold;
    result.per_state_norms.assign(3, std::vector<double>(t_grid.size(), 0.0));
    result.d_of_t.assign(t_grid.size(), 0.0);

    const auto presets = qubit::preset_states();
    par::parallel_for(t_grid.size(), [&](std::size_t i) {
        const DeviationMap map(ctx, t_grid[i]);
        for (std::size_t s = 0; s < presets.size(); ++s)
            result.per_state_norms[s][i] = map.norm_of_state(presets[s]);
        result.d_of_t[i] = d_of_t_with_map(map, policy).norm;
    });

    // First grid-refined up-crossing of the threshold.
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (result.d_of_t[i - 1] < threshold && result.d_of_t[i] >= threshold) {
            double lo = t_grid[i - 1];
            double hi = t_grid[i];
            while (hi - lo > 1.0e-3 * hi) {
                const double mid = 0.5 * (lo + hi);
                if (d_of_t(ctx, mid, policy).norm >= threshold)
                    hi = mid;
                else
                    lo = mid;
            }
            result.t_ld = 0.5 * (lo + hi);
            break;
        }
    }
    return result;
}

} // namespace decosim::measure
