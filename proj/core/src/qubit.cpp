#include "decosim/qubit.hpp"

#include <cmath>
#include <stdexcept>

#include "decosim/units.hpp"

namespace decosim::qubit {

PureState2 PureState2::normalized() const {
    const double n = std::sqrt(norm_sq());
    if (n == 0.0) throw std::domain_error("PureState2: cannot normalize the zero vector");
    return {a0 / n, a1 / n};
}

double fidelity(const PureState2& a, const PureState2& b) {
    return std::norm(std::conj(a.a0) * b.a0 + std::conj(a.a1) * b.a1);
}

PureState2 state_from_bloch(double theta, double phi) {
    return {Complex{std::cos(0.5 * theta), 0.0},
            std::polar(std::sin(0.5 * theta), phi)};
}

std::array<PureState2, 3> preset_states() {
    const double h = std::sqrt(0.5);
    return {PureState2{1.0, 0.0},
            PureState2{std::sqrt(3.0) / 2.0, 0.5},
            PureState2{h, h}};
}

DensityMatrix2 DensityMatrix2::from_pure(const PureState2& s) {
    DensityMatrix2 rho;
    rho.rho00 = std::norm(s.a0);
    rho.rho11 = std::norm(s.a1);
    rho.rho10 = s.a1 * std::conj(s.a0);
    return rho;
}

DensityMatrix2 DensityMatrix2::from_matrix(const Eigen::Matrix2cd& m) {
    DensityMatrix2 rho;
    rho.rho00 = m(0, 0).real();
    rho.rho11 = m(1, 1).real();
    rho.rho10 = 0.5 * (m(1, 0) + std::conj(m(0, 1)));
    return rho;
}

Eigen::Matrix2cd DensityMatrix2::matrix() const {
    Eigen::Matrix2cd m;
    m(0, 0) = rho00;
    m(0, 1) = std::conj(rho10);
    m(1, 0) = rho10;
    m(1, 1) = rho11;
    return m;
}

double DensityMatrix2::min_eigenvalue() const {
    const double tr = trace();
    const double det = rho00 * rho11 - std::norm(rho10);
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    return 0.5 * (tr - disc);
}

Params build_qubit(double e_ch, double e_j, double n_g) {
    if (!std::isfinite(e_j) || e_j <= 0.0)
        throw std::domain_error("build_qubit: E_J must be positive");
    if (!std::isfinite(e_ch) || e_ch < 0.0)
        throw std::domain_error("build_qubit: E_ch must be non-negative");
    if (!std::isfinite(n_g))
        throw std::domain_error("build_qubit: n_g must be finite");
    Params q;
    q.e_ch = e_ch;
    q.e_j = e_j;
    q.n_g = n_g;
    q.b_z = e_ch * (1.0 - 2.0 * n_g);
    q.b_x = e_j;
    return q;
}

namespace {

// Global sign such that the largest-magnitude component is real positive
// (first component wins ties). Keeps eigenvector phases reproducible.
PureState2 canonical_sign(const PureState2& s) {
    const double lead = std::abs(s.a0) >= std::abs(s.a1) ? s.a0.real() : s.a1.real();
    if (lead < 0.0) return {-s.a0, -s.a1};
    return s;
}

} // namespace

Eigensystem2 eigensystem(const Params& q) {
    // H_s = -(b_z sigma_z + b_x sigma_x)/2; eigenvalues +-omega/2 with
    // omega = sqrt(b_z^2 + b_x^2). Writing (b_x, b_z) = omega (sin t, cos t),
    // the +omega/2 eigenvector is (sin(t/2), -cos(t/2)) and the -omega/2 one
    // is (cos(t/2), sin(t/2)).
    const double omega = std::hypot(q.b_z, q.b_x);
    const double theta = std::atan2(q.b_x, q.b_z);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);

    Eigensystem2 eig;
    eig.lambda0 = 0.5 * omega;
    eig.lambda1 = -0.5 * omega;
    eig.phi0 = canonical_sign({s, -c});
    eig.phi1 = canonical_sign({c, s});
    return eig;
}

Eigen::Matrix2cd Eigensystem2::basis_matrix() const {
    Eigen::Matrix2cd v;
    v(0, 0) = phi0.a0;
    v(1, 0) = phi0.a1;
    v(0, 1) = phi1.a0;
    v(1, 1) = phi1.a1;
    return v;
}

Eigen::Matrix2cd gate_unitary(double e_j, double t) {
    if (!std::isfinite(t)) throw std::domain_error("gate_unitary: time must be finite");
    const double half = 0.5 * e_j * t;
    Eigen::Matrix2cd u;
    u(0, 0) = u(1, 1) = std::cos(half);
    u(0, 1) = u(1, 0) = Complex{0.0, std::sin(half)};
    return u;
}

GateTime gate_time(double e_j) {
    if (!std::isfinite(e_j) || e_j <= 0.0)
        throw std::domain_error("gate_time: E_J must be positive");
    GateTime g;
    g.internal = 1.0 / e_j;
    g.seconds = units::time_to_seconds(g.internal);
    return g;
}

DensityMatrix2 to_eigenbasis(const Eigensystem2& eig, const DensityMatrix2& computational) {
    const Eigen::Matrix2cd v = eig.basis_matrix();
    return DensityMatrix2::from_matrix(v.adjoint() * computational.matrix() * v);
}

DensityMatrix2 to_computational(const Eigensystem2& eig, const DensityMatrix2& eigenbasis) {
    const Eigen::Matrix2cd v = eig.basis_matrix();
    return DensityMatrix2::from_matrix(v * eigenbasis.matrix() * v.adjoint());
}

} // namespace decosim::qubit
