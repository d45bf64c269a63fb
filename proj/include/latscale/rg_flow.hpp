#pragma once

#include <optional>

#include "latscale/dense.hpp"
#include "latscale/filter_bank.hpp"
#include "latscale/gaussian_state.hpp"
#include "latscale/scaling_function.hpp"

namespace latscale {

// One-particle scaling map from scale N to N' = N + M.  Fields map with
// prefactor 2^{-M/2}, momenta with 2^{+M/2}; the tap profile is the M-fold
// upsampled convolution of the low-pass filter, separable across dimensions.
// CCR preservation A_Phi A_Pi^T = 1 holds exactly on the periodic lattice.
struct OneParticleMap {
    LatticeSpec from;
    LatticeSpec to;
    FilterBank bank;
    std::vector<double> taps;  // composed 1D taps T_M, offsets 0..len-1 in eps_to units
    double phi_prefactor = 1.0;
    double pi_prefactor = 1.0;

    int steps() const { return to.N - from.N; }
};

OneParticleMap build_map(const LatticeSpec& from, const LatticeSpec& to, const FilterBank& bank);

// compose(a: N->N1, b: N1->N2) = map N->N2; equals build_map(N, N2) exactly
OneParticleMap compose(const OneParticleMap& a, const OneParticleMap& b);

// dense realizations (oracle paths; fine volume capped at 4096)
Dense dense_phi(const OneParticleMap& map);
Dense dense_pi(const OneParticleMap& map);

// max |A_Phi A_Pi^T - 1|
double ccr_residual(const OneParticleMap& map);

// covariance pullback through dense matrices: C^(N) = A C^(N+M) A^T per
// block.  The brute-force oracle for momentum_fast_path.
GaussianState renormalize_state(const GaussianState& state, const OneParticleMap& map);

// identical contract, evaluated per momentum mode with 2^d-fold
// Brillouin-zone folding; O(V) per step.
GaussianState momentum_fast_path(const GaussianState& state, const OneParticleMap& map);

// Scaling-limit state at scale N: per-mode sums over the full dual ladder
// k' = k + (2 pi / eps_N) q with |shat|^2 weights and the continuum
// dispersion.  `sectors` counts fold sectors per dimension (power of two);
// sectors = 0 selects it adaptively from tol and the symbol decay.
struct LimitState {
    GaussianState state;
    double m = 0.0;
    int K = 0;
    int sectors = 0;
    double kmax = 0.0;      // largest |k'| per dimension covered
    double tail_phi = 0.0;  // outermost-shell geometric tail estimates
    double tail_pi = 0.0;
    bool pi_divergent = false;
};

LimitState scaling_limit_state(const LatticeSpec& spec, double m, const FilterBank& bank,
                               double tol, int sectors = 0, bool allow_divergent_pi = false);

// diagonal Pi-block partial sums at physical momentum cutoffs (Sobolev
// dichotomy diagnostic; Haar grows without bound, K >= 2 is Cauchy)
std::vector<double> pi_block_partial_sums(const LatticeSpec& spec, double m,
                                          const FilterBank& bank,
                                          const std::vector<double>& cutoffs);

// per-mode Richardson extrapolation of trajectory flow states in 2^-M
// (three-point fit on M = Mmax-2, Mmax-1, Mmax)
GaussianState flow_richardson(const LatticeSpec& spec, double m, const FilterBank& bank,
                              int Mmax);

// renormalized trajectory (or fixed-mu) state at scale N after M steps
GaussianState flow_state(const LatticeSpec& spec, double m, std::optional<double> fixed_mu,
                         const FilterBank& bank, int M);

struct FlowRow {
    int M = 0;
    double dist_next_phi = 0.0;  // sup_k |c_M - c_{M+1}| per block
    double dist_next_pi = 0.0;
    double resid_phi = 0.0;      // sup_k |c_M - c_limit|, trajectory runs only
    double resid_pi = 0.0;
    double ultralocal_ratio = 0.0;  // |G_phi(nn)| / G_phi(0), fixed-mu diagnostics
};

struct FlowReport {
    std::vector<FlowRow> rows;
    bool trajectory = false;
};

FlowReport flow_report(const LatticeSpec& spec, double m, std::optional<double> fixed_mu,
                       const FilterBank& bank, int M_max);

}  // namespace latscale
