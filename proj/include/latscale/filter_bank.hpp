#pragma once

#include <vector>

namespace latscale {

// Low-pass/high-pass pair of a compactly supported orthonormal scaling
// function (Daubechies D2K family).  h has 2K taps supported on [0, 2K-1];
// g is the fixed quadrature-mirror completion g_n = (-1)^n h_{2K-1-n}.
struct FilterBank {
    int K = 0;
    std::vector<double> h;
    std::vector<double> g;

    int support_length() const { return 2 * K - 1; }
};

// Residuals of the defining identities, used by tests and validation:
//   sum_residual        |sum_n h_n - sqrt(2)|
//   qmf_residual        max_m |sum_n h_n h_{n+2m} - delta_{m,0}|
//   duality_residual    max_m max(|sum g_n h_{n+2m}|, |sum g_n g_{n+2m} - delta_{m,0}|)
//   moment_residual     max_p |sum_n (-1)^n (n/(2K-1))^p h_n|, p = 0..K-1
// Moments are evaluated on scaled monomials: the raw sums for p ~ 9 carry
// O(n^p) ~ 1e11 terms whose cancellation is below double precision even for
// perfectly rounded coefficients.
double sum_residual(const FilterBank& bank);
double qmf_residual(const FilterBank& bank);
double duality_residual(const FilterBank& bank);
double moment_residual(const FilterBank& bank);
double worst_invariant_residual(const FilterBank& bank);

// Standard (extremal-phase) D2K filters, 1 <= K <= 10, by spectral
// factorization of the Daubechies polynomial with root polishing.
// Throws ValidationError for K out of range.
FilterBank daubechies_filter(int K);

// g_n = (-1)^n h_{2K-1-n}.  Throws InvariantError when h fails the
// low-pass identities.
std::vector<double> highpass_from_lowpass(const std::vector<double>& h);

}  // namespace latscale
