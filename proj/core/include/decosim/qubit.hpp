// qubit.hpp: two-level system model of the Josephson charge qubit.
//
// The effective Hamiltonian is H_s = -(B_z/2) sigma_z - (B_x/2) sigma_x with
// B_z = E_ch (1 - 2 n_g) and B_x = E_J. States are stored as amplitude pairs;
// which basis the amplitudes refer to (computational or H_s eigenbasis) is
// fixed by the consuming interface.

#pragma once

#include <array>

#include <Eigen/Dense>

#include "decosim/types.hpp"

namespace decosim::qubit {

struct PureState2 {
    Complex a0{1.0, 0.0};
    Complex a1{0.0, 0.0};

    double norm_sq() const { return std::norm(a0) + std::norm(a1); }
    PureState2 normalized() const;
    Eigen::Vector2cd vector() const { return {a0, a1}; }
};

// |<a|b>|^2
double fidelity(const PureState2& a, const PureState2& b);

// Bloch angles (theta in [0,pi], phi in [0,2pi)) to (cos(theta/2), e^{i phi} sin(theta/2)).
PureState2 state_from_bloch(double theta, double phi);

// The three initial states used throughout: (1,0), (sqrt(3)/2, 1/2), (sqrt(1/2), sqrt(1/2)).
std::array<PureState2, 3> preset_states();

// Hermitian 2x2 with unit trace; Hermiticity is structural (only the
// independent components are stored, rho01 = conj(rho10)).
struct DensityMatrix2 {
    double rho00 = 1.0;
    double rho11 = 0.0;
    Complex rho10{0.0, 0.0};

    static DensityMatrix2 from_pure(const PureState2& s);
    static DensityMatrix2 from_matrix(const Eigen::Matrix2cd& m);

    Eigen::Matrix2cd matrix() const;
    double trace() const { return rho00 + rho11; }
    // Smaller eigenvalue; >= -1e-10 for any physically valid state.
    double min_eigenvalue() const;
};

struct Params {
    double e_ch = 0.0;  // charging energy, micro-eV
    double e_j = 0.0;   // Josephson coupling energy, micro-eV
    double n_g = 0.5;   // dimensionless gate charge
    double b_z = 0.0;   // = e_ch * (1 - 2 n_g)
    double b_x = 0.0;   // = e_j
};

// Validates E_J > 0, E_ch >= 0 and fills the derived fields.
Params build_qubit(double e_ch, double e_j, double n_g);

// Eigen pairs of H_s, ordered lambda0 >= lambda1. Eigenvector amplitudes are
// in the computational (sigma_z) basis, phase-fixed so that the
// largest-magnitude component is real positive; at B_z = 0 this gives
// phi0 = (|0> - |1>)/sqrt(2), phi1 = (|0> + |1>)/sqrt(2).
struct Eigensystem2 {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    PureState2 phi0;
    PureState2 phi1;
    static constexpr int chi0 = +1;  // sigma_z eigenvalue of |psi_0> = |0>
    static constexpr int chi1 = -1;  // sigma_z eigenvalue of |psi_1> = |1>

    // Columns phi0, phi1: maps eigenbasis coordinates to computational ones.
    Eigen::Matrix2cd basis_matrix() const;
};

Eigensystem2 eigensystem(const Params& q);

// exp(i E_J t sigma_x / 2), the single-qubit rotation at the degeneracy point.
Eigen::Matrix2cd gate_unitary(double e_j, double t);

struct GateTime {
    double internal = 0.0;
    double seconds = 0.0;
};

// Elementary gate operation time hbar/E_J.
GateTime gate_time(double e_j);

// Density-matrix components between the computational basis and the
// eigenbasis of the given eigensystem.
DensityMatrix2 to_eigenbasis(const Eigensystem2& eig, const DensityMatrix2& computational);
DensityMatrix2 to_computational(const Eigensystem2& eig, const DensityMatrix2& eigenbasis);

} // namespace decosim::qubit
