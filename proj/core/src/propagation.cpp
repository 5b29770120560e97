#include "decosim/propagation.hpp"

#include <cmath>
#include <stdexcept>

namespace decosim::prop {

Context Context::make(const qubit::Params& q, bath::Spec b) {
    Context ctx;
    ctx.qubit_params = q;
    ctx.eig = qubit::eigensystem(q);
    ctx.bath_spec = std::move(b);
    return ctx;
}

SplitPropagator::SplitPropagator(const Context& ctx, double t) : t_(t) {
    if (!std::isfinite(t)) throw std::domain_error("SplitPropagator: time must be finite");

    const qubit::Eigensystem2& eig = ctx.eig;
    splitting_ = eig.lambda0 - eig.lambda1;
    w_ = bath::w_factors(ctx.bath_spec, t);

    // Overlaps <phi_a|phi_b> and <phi_a|psi_x> with |psi_0> = |0>, |psi_1> = |1>.
    const qubit::PureState2 phi[2] = {eig.phi0, eig.phi1};
    Complex ff[2][2];
    Complex fp[2][2];
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b)
            ff[a][b] = std::conj(phi[a].a0) * phi[b].a0 + std::conj(phi[a].a1) * phi[b].a1;
        fp[a][0] = std::conj(phi[a].a0);
        fp[a][1] = std::conj(phi[a].a1);
    }

    const double lambda[2] = {eig.lambda0, eig.lambda1};
    // Bath factor by chi_sigma - chi_xi in {-2, 0, +2}; chi[0] = +1, chi[1] = -1.
    const Complex bath_factor[3] = {w_.w2, {1.0, 0.0}, w_.w1};
    const int chi[2] = {+1, -1};

    for (auto& plane : k_)
        for (auto& row : plane)
            for (auto& cell : row) cell = {0.0, 0.0};

    // Direct eightfold sum: each term is the product of eight overlap
    // factors, the half-step eigenphase and one cached bath factor.
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
            for (int alpha = 0; alpha < 2; ++alpha)
                for (int beta = 0; beta < 2; ++beta)
                    for (int xi = 0; xi < 2; ++xi)
                        for (int sigma = 0; sigma < 2; ++sigma)
                            for (int p = 0; p < 2; ++p)
                                for (int q = 0; q < 2; ++q)
                                    for (int mu = 0; mu < 2; ++mu)
                                        for (int nu = 0; nu < 2; ++nu) {
                                            const double phase = 0.5 * t *
                                                (lambda[mu] + lambda[nu] - lambda[alpha] - lambda[beta]);
                                            const Complex term =
                                                std::polar(1.0, phase) *
                                                ff[m][alpha] * fp[alpha][xi] *
                                                std::conj(fp[beta][xi]) * ff[beta][p] *
                                                ff[q][mu] * fp[mu][sigma] *
                                                std::conj(fp[nu][sigma]) * ff[nu][n] *
                                                bath_factor[(chi[sigma] - chi[xi]) / 2 + 1];
                                            k_[m][n][p][q] += term;
                                        }
}

qubit::DensityMatrix2 SplitPropagator::apply(const qubit::DensityMatrix2& rho0) const {
    const Complex rho[2][2] = {{rho0.rho00, std::conj(rho0.rho10)},
                               {rho0.rho10, rho0.rho11}};
    Complex out[2][2];
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            Complex acc{0.0, 0.0};
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q) acc += k_[m][n][p][q] * rho[p][q];
            out[m][n] = acc;
        }
    qubit::DensityMatrix2 result;
    result.rho00 = out[0][0].real();
    result.rho11 = out[1][1].real();
    result.rho10 = 0.5 * (out[1][0] + std::conj(out[0][1]));
    return result;
}

qubit::DensityMatrix2 reduced_density(const Context& ctx, const qubit::DensityMatrix2& rho0,
                                      double t) {
    return SplitPropagator(ctx, t).apply(rho0);
}

qubit::DensityMatrix2 ideal_density_from_splitting(double level_splitting,
                                                   const qubit::DensityMatrix2& rho0, double t) {
    qubit::DensityMatrix2 out = rho0;
    out.rho10 = std::polar(1.0, level_splitting * t) * rho0.rho10;
    return out;
}

qubit::DensityMatrix2 ideal_density(const qubit::Params& q, const qubit::DensityMatrix2& rho0,
                                    double t) {
    if (!std::isfinite(t)) throw std::domain_error("ideal_density: time must be finite");
    const qubit::Eigensystem2 eig = qubit::eigensystem(q);
    return ideal_density_from_splitting(eig.lambda0 - eig.lambda1, rho0, t);
}

ClosedFormDeviation deviation_elements_closed_form(const qubit::DensityMatrix2& rho0, double e_j,
                                                   Complex w1, Complex w2, double t) {
    const double d = rho0.rho00 - rho0.rho11;
    const Complex rho10 = rho0.rho10;
    const Complex rho01 = std::conj(rho10);
    const Complex half_phase = std::polar(1.0, 0.5 * e_j * t);
    const Complex full_phase = half_phase * half_phase;
    const Complex two_minus_w = 2.0 - w1 - w2;

    ClosedFormDeviation dev;
    dev.sigma11 = 0.25 * d * two_minus_w +
                  0.25 * (w1 - w2) * (half_phase * rho10 - std::conj(half_phase) * rho01);
    dev.sigma10 = 0.25 * d * half_phase * (w2 - w1) +
                  0.25 * two_minus_w * (rho01 - full_phase * rho10);
    return dev;
}

} // namespace decosim::prop
