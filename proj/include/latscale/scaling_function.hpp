#pragma once

#include <complex>
#include <vector>

#include "latscale/filter_bank.hpp"
#include "latscale/lattice.hpp"

namespace latscale {

// Scaling-function samples on the dyadic grid 2^-J * {0 .. (2K-1) 2^J}
// obtained by cascade iteration from the Haar indicator.
struct ScalingSamples {
    int K = 0;
    int J = 0;
    std::vector<double> values;
    double residual = 0.0;  // sup-norm change of the last iterate
    int iterations = 0;

    double x_of(std::size_t i) const { return static_cast<double>(i) / (1 << J); }
};

// Cascade iteration; stops at sup-norm difference < 1e-10 or 200 iterations.
// Throws InvariantError when the residual has not dropped below `tol_fail`.
ScalingSamples cascade_evaluate(const FilterBank& bank, int J, double tol_fail = 1e-6);

// m0(theta) = 2^{-1/2} sum_n h_n e^{-i n theta}
std::complex<double> m0(const FilterBank& bank, double theta);

// shat(k) by the truncated product prod_{j>=1} m0(2^-j k); j_max adaptive so
// the dropped tail satisfies |k| 2^-j_max < 0.05.
std::complex<double> fourier_scaling(const FilterBank& bank, double k);

// |shat|^2 on the uniform grid theta_j = j*step, j = 0..n-1.  Even indices
// reuse shat(theta_j) = m0(theta_j/2) shat(theta_j/2); this is the bulk
// evaluator behind scaling-limit sums.
std::vector<double> symbol_sq_grid(const FilterBank& bank, double step, std::size_t n);

// complex shat on the same grid (full phase accuracy; negative arguments are
// conjugates of the returned values)
std::vector<std::complex<double>> symbol_grid(const FilterBank& bank, double step,
                                              std::size_t n);

// Estimate of the decay exponent alpha in |shat(k)| <= C (1+|k|)^-alpha,
// fitted on dyadic shells; used for adaptive momentum cutoffs.
double symbol_decay_exponent(const FilterBank& bank);

// I(cut) = int_{|k|<=cut} (1+|k|) |shat(k)|^2 dk for each cutoff
// (composite Simpson, grid resolving the 2 pi oscillation scale).
std::vector<double> sobolev_halforder_diagnostic(const FilterBank& bank,
                                                 const std::vector<double>& cutoffs);

// Coefficient of the periodized, L^2-normalized scaling function s^(eps_N)_x
// on the torus momentum k = (pi/L) j:  e^{-i k x} eps_N^{d/2} shat_d(eps_N k).
// x is the site position per dimension; j the integer momentum index per
// dimension.  Throws ValidationError when j is not on the dual grid of the
// torus (checked against |j| bounds only in range-extended use).
std::complex<double> periodized_symbol(const FilterBank& bank, const LatticeSpec& spec,
                                       const double* x, const std::int64_t* j);

}  // namespace latscale
