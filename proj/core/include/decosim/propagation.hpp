// propagation.hpp: reduced qubit dynamics under the symmetric-split evolution
// exp(-i H_s t/2) exp(-i (H_I + H_B) t) exp(-i H_s t/2).
//
// Density matrices handed to and returned from these functions are expressed
// in the eigenbasis of H_s (lambda0 >= lambda1). Tracing out the thermal bath
// in closed form leaves, per matrix element, a sum over eigen/pointer-basis
// index chains with one cached bath factor per chi difference: 1, W1 or W2.

#pragma once

#include "decosim/bath.hpp"
#include "decosim/qubit.hpp"
#include "decosim/types.hpp"

namespace decosim::prop {

struct Context {
    qubit::Params qubit_params;
    qubit::Eigensystem2 eig;
    bath::Spec bath_spec;

    static Context make(const qubit::Params& q, bath::Spec b);
};

// The reduced map rho(0) -> rho(t) at fixed context and time is linear; this
// caches its 16 kernel coefficients so scans over many initial states pay
// the bath-trace and index-chain cost once.
class SplitPropagator {
  public:
    SplitPropagator(const Context& ctx, double t);

    qubit::DensityMatrix2 apply(const qubit::DensityMatrix2& rho0) const;

    double time() const { return t_; }
    Complex w1() const { return w_.w1; }
    Complex w2() const { return w_.w2; }
    // lambda0 - lambda1, the qubit level splitting.
    double level_splitting() const { return splitting_; }

    // Kernel coefficient of rho_pq(0) in rho_mn(t).
    Complex kernel(int m, int n, int p, int q) const { return k_[m][n][p][q]; }

  private:
    double t_ = 0.0;
    double splitting_ = 0.0;
    bath::WFactors w_;
    Complex k_[2][2][2][2];
};

// rho(t) from the split evolution with rho0 in the H_s eigenbasis.
qubit::DensityMatrix2 reduced_density(const Context& ctx, const qubit::DensityMatrix2& rho0,
                                      double t);

// Interaction-free evolution exp(-i H_s t) rho0 exp(i H_s t); in the
// eigenbasis the populations are constant and the coherence picks up the
// phase exp(i (lambda0 - lambda1) t).
qubit::DensityMatrix2 ideal_density(const qubit::Params& q, const qubit::DensityMatrix2& rho0,
                                    double t);
qubit::DensityMatrix2 ideal_density_from_splitting(double level_splitting,
                                                   const qubit::DensityMatrix2& rho0, double t);

struct ClosedFormDeviation {
    Complex sigma11;
    Complex sigma10;
};

// Degeneracy-point (B_z = 0) deviation elements written directly in terms of
// W1, W2 and the initial eigenbasis components:
//   sigma11 = (1/4)(rho00-rho11)(2-W1-W2)
//           + (1/4)(W1-W2)(e^{i t E_J/2} rho10 - e^{-i t E_J/2} rho01),
//   sigma10 = (1/4)(rho00-rho11) e^{i t E_J/2} (W2-W1)
//           + (1/4)(2-W1-W2)(rho01 - e^{i t E_J} rho10).
// Exact for any rho10; cross-checked against the general path in tests.
ClosedFormDeviation deviation_elements_closed_form(const qubit::DensityMatrix2& rho0, double e_j,
                                                   Complex w1, Complex w2, double t);

} // namespace decosim::prop
