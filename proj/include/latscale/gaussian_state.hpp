#pragma once

#include <complex>
#include <vector>

#include "latscale/lattice.hpp"

namespace latscale {

using cdouble = std::complex<double>;

// Translation-invariant quasi-free state as per-momentum covariance data:
//   cphi[k] = <Phi Phi>(k),  cpi[k] = <Pi Pi>(k),  cross[k] = <Phi Pi>(k).
// Position-space kernels are inverse transforms of these arrays.  Ground
// states and everything the RG pipeline produces keep cross = i/2 (vanishing
// symmetrized part, CCR part exact).  An optional displacement stores mean
// field/momentum in site space.
struct GaussianState {
    LatticeSpec spec;
    std::vector<double> cphi;
    std::vector<double> cpi;
    std::vector<cdouble> cross;
    bool zero_mode_excluded = false;
    std::vector<double> mean_phi;  // empty = zero
    std::vector<double> mean_pi;

    bool displaced() const { return !mean_phi.empty() || !mean_pi.empty(); }
};

// Real phase-space pair over the sites of a lattice, labeling the Weyl
// operator e^{i(Phi(f) + Pi(g))}.
struct WeylDescriptor {
    LatticeSpec spec;
    std::vector<double> f;
    std::vector<double> g;
};

WeylDescriptor zero_descriptor(const LatticeSpec& spec);
// delta descriptors at a site index
WeylDescriptor site_descriptor(const LatticeSpec& spec, std::int64_t site, double famp,
                               double gamp);

// smallest uncertainty product cphi*cpi - Im(cross)^2 over modes; 0 for pure
double min_uncertainty_gap(const GaussianState& state);
// worst violation of the invariants (negative variances, uncertainty < 1/4)
void validate_state(const GaussianState& state, double tol = 1e-9);

// Exact ground state of the harmonic model:
//   <PhiPhi>(k) = 1/(2 eps gamma(k)),  <PiPi>(k) = eps gamma(k)/2,
//   <PhiPi>(k) = i/2.
// Throws ValidationError at an unexcluded zero mode with gamma = 0.
GaussianState ground_state(const HarmonicModel& model);

// ground-state energy <H> from the covariance; equals (1/2) sum_k gamma(k)
double covariance_energy(const HarmonicModel& model, const GaussianState& state);

// omega(e^{i(Phi(f)+Pi(g))}); for mean-zero states exp(-Q(f,g)/2).
cdouble weyl_expectation(const GaussianState& state, const WeylDescriptor& w);

// symplectic form sigma((f,g),(f',g')) = <f,g'> - <g,f'> (site space, exact)
double symplectic_form(const WeylDescriptor& a, const WeylDescriptor& b);

// <c(w1), c(w2)> = e^{(i/2) sigma(w1,w2)} omega(W(w2 - w1))
cdouble coherent_overlap(const GaussianState& state, const WeylDescriptor& w1,
                         const WeylDescriptor& w2);

enum class FieldKind { phi, pi };

struct Insertion {
    FieldKind kind;
    std::int64_t site;
};

// Wick expectation of the ordered monomial; pairings of ordered two-point
// functions, with mean terms when the state is displaced.
cdouble wick_correlator(const GaussianState& state, const std::vector<Insertion>& ins);

// ordered two-point function <A(x) B(y)> for site indices
cdouble pair_correlator(const GaussianState& state, FieldKind a, std::int64_t x, FieldKind b,
                        std::int64_t y);

// position-space covariance kernel G_block(x-y) for a separation given in
// integer lattice steps per dimension
double cov_phi(const GaussianState& state, const std::array<std::int64_t, 3>& delta);
double cov_pi(const GaussianState& state, const std::array<std::int64_t, 3>& delta);

}  // namespace latscale
