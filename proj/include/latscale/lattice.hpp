#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace latscale {

// Dyadic lattice on the torus [-L, L)^d.  Scale N has lattice constant
// eps_N = 2^-N * eps0 and L_N = 2^N * L0 sites per half-axis, so the torus
// length 2L is fixed while the mesh refines.  The dual lattice keeps the
// fixed spacing pi/L and grows in range: k_j = (pi/L) j, j in [-L_N, L_N).
struct LatticeSpec {
    int d = 1;
    double eps0 = 1.0;
    std::int64_t L0 = 1;
    int N = 0;

    double L() const { return eps0 * static_cast<double>(L0); }
    double eps() const { return eps0 * std::pow(2.0, -N); }
    std::int64_t halfsites() const { return L0 << N; }      // L_N
    std::int64_t sites_per_dim() const { return 2 * halfsites(); }
    std::int64_t volume() const;                            // (2 L_N)^d

    LatticeSpec refined(int steps) const;                   // scale N + steps

    // site/momentum indices run lexicographically over [-L_N, L_N)^d
    std::array<std::int64_t, 3> unflatten(std::int64_t idx) const;
    std::int64_t flatten(const std::array<std::int64_t, 3>& t) const;
    double momentum_component(std::int64_t j) const;        // (pi/L) j

    bool compatible_torus(const LatticeSpec& other) const;
};

LatticeSpec make_lattice(int d, double eps0, std::int64_t L0, int N);

// Harmonic lattice Hamiltonian data.  mu2 is the squared mass parameter
// (stability requires mu2 >= 2d); when built from a target mass m via the
// renormalization condition, mu2 = 2d + eps_N^2 m^2 at every scale.
struct HarmonicModel {
    LatticeSpec spec;
    double mu2 = 0.0;
    bool zero_mode_excluded = false;
};

// mu_N from the renormalization condition, m > 0.
double mass_parameter(const LatticeSpec& spec, double m);

HarmonicModel trajectory_model(const LatticeSpec& spec, double m);
HarmonicModel fixed_mu_model(const LatticeSpec& spec, double mu, bool exclude_zero_mode = false);

// Dispersion gamma_mu(k) >= 0 for k given per-dimension; valid for any real
// k (the formula extends the lattice values periodically).
double dispersion(const HarmonicModel& model, const double* k);
double dispersion(const HarmonicModel& model, double k1);

// gamma_m(k) = sqrt(m^2 + |k|^2), the massive continuum dispersion.
double continuum_dispersion(double m, const double* k, int d);

// Per-dimension dispersion table over the dual lattice, flattened
// lexicographically; gamma[i] for momentum index i.
std::vector<double> dispersion_table(const HarmonicModel& model);

}  // namespace latscale
