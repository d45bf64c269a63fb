#pragma once

#include <optional>

#include "latscale/filter_bank.hpp"
#include "latscale/gaussian_state.hpp"

namespace latscale {

// Heisenberg evolution of Weyl descriptors under the harmonic Hamiltonian:
// per momentum mode the pair (f, g) rotates with frequency gamma(k) and
// stiffness eps_N gamma(k),
//   f(t) = cos(gamma t) f - eps gamma sin(gamma t) g
//   g(t) = sin(gamma t) / (eps gamma) f + cos(gamma t) g.
// Symplectic per mode; the energy form is conserved.
WeylDescriptor evolve_weyl(const HarmonicModel& model, const WeylDescriptor& w, double t);

// energy quadratic form sum_k [ |f|^2/(eps gamma)... conserved by evolve_weyl
double descriptor_energy_form(const HarmonicModel& model, const WeylDescriptor& w);

// commutator amplitude D with [Phi(x,t), Phi(y,0)] = i D:
//   D = (1/(2 L_N)^d) sum_k sin(gamma(k) t)/(eps gamma(k)) e^{i k (x-y)}
// (zero mode handled by the sinc limit).  x, y are site indices.
double commutator_function(const HarmonicModel& model, std::int64_t x, std::int64_t y, double t);

// |D| heatmap over (t, r) with separations r = eps * n along the first axis
struct CommutatorGrid {
    std::vector<double> ts;
    std::vector<double> rs;
    std::vector<double> absd;  // row-major [t][r]
};
CommutatorGrid commutator_grid(const HarmonicModel& model, const std::vector<double>& ts,
                               const std::vector<std::int64_t>& site_offsets);

// least-squares fit of log|D| = c0 - lambda (r - v t) on the cone-edge band
//   v0 t + 3 eps < r <= v0 t + 3 eps + band,  t >= tmin_frac * max(t),
//   floor < |D|
struct LightconeFit {
    double lambda = 0.0;
    double velocity = 0.0;
    double r2 = 0.0;
    int points = 0;
    double v0 = 1.2;
    double band = 0.4;
    double tmin_frac = 0.25;
    double floor = 1e-13;
};
LightconeFit lightcone_fit(const CommutatorGrid& grid, double eps, double v0 = 1.2,
                           double band = 0.4, double tmin_frac = 0.25, double floor = 1e-13);

// max_k |d gamma / dk| over the Brillouin zone (group velocity bound)
double max_group_velocity(const HarmonicModel& model);

// sup_{|k| <= k_fix} |gamma_{mu_N'}(k) - gamma_m(k)| on the trajectory
double dispersion_gap(const LatticeSpec& specNprime, double m, double k_fix);

// One-step data of the uniform-in-time dynamics approximation bound:
//   lhs = || (sigma^{(N')}_t - sigma_t)(A) psi ||
// for A = the embedded Weyl operator e^{i(Phi_N(x) + Pi_N(y))} and psi the
// coherent state with smearing centers (u, v) at scale N; rhs is the
// envelope sup_k gamma_m^{1/2} |gamma_{mu_N'} - gamma_m| / (1 + eps_N |k|)^delta
// on the truncated momentum grid.
struct DynErrorResult {
    double lhs = 0.0;
    std::vector<double> rhs;        // one per requested delta
    std::vector<double> deltas;
    bool rhs_sup_at_edge = false;   // sup attained at the truncation edge
    std::int64_t modes = 0;         // grid half-width in units of pi/L
};
DynErrorResult dynamics_error(const LatticeSpec& specN, int Nprime, const FilterBank& bank,
                              double m, double x, double y, double u, double v, double t,
                              const std::vector<double>& deltas, std::int64_t modes = 0);

// field/momentum insertion at a (real) position, optionally inside the
// spacetime-translated factor
struct CorrInsertion {
    FieldKind kind;
    double pos;
    bool translated;  // belongs to B = sigma_{(t,x)}(B)
};

// | omega^{(N')}( A sigma^{(N')}_{(t,x)}(B) ) - omega( A sigma_{(t,x)}(B) ) |
double correlator_convergence(const LatticeSpec& specN, int Nprime, const FilterBank& bank,
                              double m, const std::vector<CorrInsertion>& insertions, double t,
                              double xshift, std::int64_t modes = 0);

}  // namespace latscale
