#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "latscale/errors.hpp"
#include "latscale/scaling_function.hpp"

using namespace latscale;

TEST_CASE("Haar cascade is the indicator") {
    const FilterBank b = daubechies_filter(1);
    const ScalingSamples s = cascade_evaluate(b, 6);
    CHECK(s.residual <= 1e-10);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        const double x = s.x_of(i);
        CHECK(s.values[i] == doctest::Approx(x < 1.0 ? 1.0 : 0.0));
    }
}

TEST_CASE("cascade: partition of unity at converged J (K=2)") {
    const FilterBank b = daubechies_filter(2);
    const ScalingSamples s = cascade_evaluate(b, 10);
    const std::int64_t one = std::int64_t(1) << s.J;
    // sum_n s(x - n) over integer shifts, for x in [0,1) on the grid
    for (std::int64_t p = 0; p < one; ++p) {
        double acc = 0.0;
        for (int n = -(2 * b.K); n <= 2 * b.K; ++n) {
            const std::int64_t q = p - n * one;
            if (q >= 0 && q < static_cast<std::int64_t>(s.values.size())) acc += s.values[q];
        }
        CHECK(std::fabs(acc - 1.0) <= 1e-9);
    }
}

TEST_CASE("cascade: support endpoint mass shrinks with J (K=2)") {
    const FilterBank b = daubechies_filter(2);
    double prev = 1.0;
    for (int J : {6, 8, 10}) {
        const ScalingSamples s = cascade_evaluate(b, J);
        // last grid point sits at x = 2K-1 = 3 exactly; value there is 0
        CHECK(std::fabs(s.values.back()) <= 1e-12);
        // s(2.9999...): a fixed count of samples before the endpoint covers a
        // window whose width shrinks with J; continuity forces the max down
        double near = 0.0;
        for (std::size_t q = s.values.size() - 16; q < s.values.size(); ++q)
            near = std::max(near, std::fabs(s.values[q]));
        CHECK(near < prev);
        prev = near;
    }
    CHECK(prev < 5e-3);
}

TEST_CASE("cascade refinement consistency: J+1 restricted to J grid") {
    const FilterBank b = daubechies_filter(3);
    const ScalingSamples sj = cascade_evaluate(b, 7);
    const ScalingSamples sj1 = cascade_evaluate(b, 8);
    double worst = 0.0;
    for (std::size_t i = 0; i < sj.values.size(); ++i)
        worst = std::max(worst, std::fabs(sj.values[i] - sj1.values[2 * i]));
    CHECK(worst <= 1e-8);  // both iterates converged to 1e-10; grids share points
}

TEST_CASE("fourier symbol basics") {
    const FilterBank haar = daubechies_filter(1);
    CHECK(std::abs(fourier_scaling(haar, 0.0) - 1.0) == 0.0);
    // |shat(pi)| = 2/pi for the indicator (closed-form Fourier integral oracle)
    CHECK(std::abs(fourier_scaling(haar, M_PI)) == doctest::Approx(2.0 / M_PI).epsilon(1e-9));
    // orthonormal translates force shat(2 pi n) = 0
    CHECK(std::abs(fourier_scaling(haar, 2.0 * M_PI)) <= 1e-9);
    const FilterBank d4 = daubechies_filter(2);
    CHECK(std::abs(fourier_scaling(d4, 2.0 * M_PI)) <= 1e-9);
    for (double k : {0.3, 2.0, 11.0, 60.0}) CHECK(std::abs(fourier_scaling(d4, k)) <= 1.0 + 1e-12);
}

TEST_CASE("product formula matches DFT of high-resolution cascade samples") {
    const FilterBank b = daubechies_filter(2);
    const ScalingSamples s = cascade_evaluate(b, 14);
    const double hstep = 1.0 / (1 << s.J);
    for (double k : {0.7, 3.3, 10.0, 32.0 * M_PI}) {
        // trapezoid on the cascade grid
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            const double w = (i == 0 || i + 1 == s.values.size()) ? 0.5 : 1.0;
            acc += w * s.values[i] * std::polar(1.0, -k * s.x_of(i));
        }
        acc *= hstep;
        CHECK(std::abs(acc - fourier_scaling(b, k)) <= 1e-6);
    }
}

TEST_CASE("Gram of integer translates from cascade quadrature is the identity") {
    const FilterBank b = daubechies_filter(2);
    const ScalingSamples s = cascade_evaluate(b, 12);
    const double hstep = 1.0 / (1 << s.J);
    for (int shift = 0; shift <= 2; ++shift) {
        double acc = 0.0;
        const std::int64_t off = static_cast<std::int64_t>(shift) << s.J;
        for (std::size_t i = 0; i + off < s.values.size(); ++i)
            acc += s.values[i] * s.values[i + off];
        acc *= hstep;
        CHECK(std::fabs(acc - (shift == 0 ? 1.0 : 0.0)) <= 1e-6);
    }
}

TEST_CASE("sobolev half-order diagnostic: dichotomy across families") {
    const std::vector<double> cuts{1e2, 1e4, 1e6};

    // Haar: log-divergent, increments ~ 4 ln(cutoff ratio), non-shrinking
    // (|shat|^2 = sinc^2 closed form behind the 4 ln(.) value)
    const auto ih = sobolev_halforder_diagnostic(daubechies_filter(1), cuts);
    const double d1 = ih[1] - ih[0], d2 = ih[2] - ih[1];
    CHECK(d1 == doctest::Approx(4.0 * std::log(100.0)).epsilon(0.01));
    CHECK(d2 >= 0.99 * d1);

    // K=2: increments shrink sharply (Cauchy trend)
    const auto i2 = sobolev_halforder_diagnostic(daubechies_filter(2), cuts);
    const double e1 = i2[1] - i2[0], e2 = i2[2] - i2[1];
    CHECK(e1 > 0.0);
    CHECK(e2 > 0.0);
    CHECK(e2 <= 0.05 * e1);
    CHECK(e1 == doctest::Approx(0.1356).epsilon(0.05));   // quadrature oracle value
    CHECK(e2 == doctest::Approx(1.31e-3).epsilon(0.10));  // quadrature oracle value

    // K=3 decays faster than K=2 at equal cutoffs
    const auto i3 = sobolev_halforder_diagnostic(daubechies_filter(3), cuts);
    CHECK(i3[1] - i3[0] < 0.1 * e1);
    CHECK(i3[2] - i3[1] < 1e-4);
}

TEST_CASE("symbol decay exponent grows with K") {
    const double a1 = symbol_decay_exponent(daubechies_filter(1));
    const double a2 = symbol_decay_exponent(daubechies_filter(2));
    const double a4 = symbol_decay_exponent(daubechies_filter(4));
    CHECK(a1 == doctest::Approx(1.0).epsilon(0.1));
    CHECK(a2 > 1.05);
    CHECK(a4 > a2);
}

TEST_CASE("symbol_sq_grid matches pointwise evaluation") {
    const FilterBank b = daubechies_filter(2);
    const double step = 0.37;
    const auto grid = symbol_sq_grid(b, step, 700);
    for (std::size_t j : {std::size_t(1), std::size_t(2), std::size_t(33), std::size_t(256),
                          std::size_t(699)}) {
        const double ref = std::norm(fourier_scaling(b, step * static_cast<double>(j)));
        CHECK(grid[j] == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("periodized symbol: normalization, modulation, Parseval") {
    const FilterBank b = daubechies_filter(2);
    const LatticeSpec spec = make_lattice(1, 1.0, 2, 1);  // L = 2, eps_N = 1/2
    const double eps = spec.eps();

    double x0 = 0.0;
    std::int64_t j0 = 0;
    CHECK(periodized_symbol(b, spec, &x0, &j0).real() == doctest::Approx(std::sqrt(eps)));

    // translation covariance: coefficient(x) = e^{-i k x} coefficient(0)
    double x1 = 3.0 * eps;
    std::int64_t j1 = 5;
    const auto c0 = periodized_symbol(b, spec, &x0, &j1);
    const auto c1 = periodized_symbol(b, spec, &x1, &j1);
    const double k1 = spec.momentum_component(j1);
    CHECK(std::abs(c1 - c0 * std::polar(1.0, -k1 * x1)) <= 1e-12);

    // Parseval: (1/2L) sum_k |coeff|^2 -> 1 as the cutoff grows
    double acc = 0.0;
    for (std::int64_t j = -4000; j <= 4000; ++j) {
        const auto c = periodized_symbol(b, spec, &x0, &j);
        acc += std::norm(c);
    }
    acc /= 2.0 * spec.L();
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("cascade rejects bad resolution") {
    CHECK_THROWS_AS(cascade_evaluate(daubechies_filter(2), 0), ValidationError);
}
