#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "latscale/errors.hpp"
#include "latscale/filter_bank.hpp"

using namespace latscale;

namespace {

// independent oracle for the D4 taps: damped Newton on the constraint system
//   sum h = sqrt(2), sum h_n h_{n+2} = 0, p=0 and p=1 vanishing moments
// (this selection is nonsingular at the solution; sum h^2 = 1 follows)
std::array<double, 4> solve_d4_newton() {
    std::array<double, 4> h{0.48, 0.84, 0.22, -0.13};
    for (int it = 0; it < 60; ++it) {
        const double f0 = h[0] + h[1] + h[2] + h[3] - std::sqrt(2.0);
        const double f1 = h[0] * h[2] + h[1] * h[3];
        const double f2 = h[0] - h[1] + h[2] - h[3];
        const double f3 = -h[1] + 2 * h[2] - 3 * h[3];
        double J[4][4] = {{1, 1, 1, 1},
                          {h[2], h[3], h[0], h[1]},
                          {1, -1, 1, -1},
                          {0, -1, 2, -3}};
        double rhs[4] = {-f0, -f1, -f2, -f3};
        // gaussian elimination
        for (int c = 0; c < 4; ++c) {
            int piv = c;
            for (int r = c + 1; r < 4; ++r)
                if (std::fabs(J[r][c]) > std::fabs(J[piv][c])) piv = r;
            std::swap(J[c], J[piv]);
            std::swap(rhs[c], rhs[piv]);
            for (int r = c + 1; r < 4; ++r) {
                const double m = J[r][c] / J[c][c];
                for (int cc = c; cc < 4; ++cc) J[r][cc] -= m * J[c][cc];
                rhs[r] -= m * rhs[c];
            }
        }
        double dx[4];
        for (int r = 3; r >= 0; --r) {
            double s = rhs[r];
            for (int cc = r + 1; cc < 4; ++cc) s -= J[r][cc] * dx[cc];
            dx[r] = s / J[r][r];
        }
        double step2 = 0.0;
        for (double v : dx) step2 += v * v;
        const double cap = 0.25;
        const double scale = (step2 > cap * cap) ? cap / std::sqrt(step2) : 1.0;
        for (int i = 0; i < 4; ++i) h[i] += scale * dx[i];
    }
    return h;
}

}  // namespace

TEST_CASE("Haar filter is the equal-tap pair") {
    const FilterBank b = daubechies_filter(1);
    REQUIRE(b.h.size() == 2);
    CHECK(b.h[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(b.h[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(b.g[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(b.g[1] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("D4 matches the closed form and the Newton oracle") {
    const FilterBank b = daubechies_filter(2);
    REQUIRE(b.h.size() == 4);
    const double s3 = std::sqrt(3.0), s2 = std::sqrt(2.0);
    const double closed[4] = {(1 + s3) / (4 * s2), (3 + s3) / (4 * s2), (3 - s3) / (4 * s2),
                              (1 - s3) / (4 * s2)};
    for (int i = 0; i < 4; ++i) CHECK(std::fabs(b.h[i] - closed[i]) <= 1e-12);

    const auto oracle = solve_d4_newton();
    for (int i = 0; i < 4; ++i) CHECK(std::fabs(b.h[i] - oracle[i]) <= 1e-12);

    // spec'd decimal values
    CHECK(b.h[0] == doctest::Approx(0.4829629131).epsilon(1e-9));
    CHECK(b.h[1] == doctest::Approx(0.8365163037).epsilon(1e-9));
    CHECK(b.h[2] == doctest::Approx(0.2241438680).epsilon(1e-9));
    CHECK(b.h[3] == doctest::Approx(-0.1294095226).epsilon(1e-8));
}

TEST_CASE("filter invariants hold to 1e-12 for K = 1..10") {
    for (int K = 1; K <= 10; ++K) {
        const FilterBank b = daubechies_filter(K);
        CHECK(static_cast<int>(b.h.size()) == 2 * K);
        CHECK(sum_residual(b) <= 1e-12);
        CHECK(qmf_residual(b) <= 1e-12);
        CHECK(duality_residual(b) <= 1e-12);
        CHECK(moment_residual(b) <= 1e-12);
    }
}

TEST_CASE("sum of taps is sqrt(2) for every family") {
    for (int K : {1, 3, 5, 8, 10}) {
        const FilterBank b = daubechies_filter(K);
        double s = 0.0;
        for (double v : b.h) s += v;
        CHECK(s == doctest::Approx(1.4142135624).epsilon(1e-10));
    }
}

TEST_CASE("high-pass completion: zero mean and duality") {
    const FilterBank b = daubechies_filter(2);
    double gsum = 0.0, gh = 0.0;
    for (std::size_t i = 0; i < b.g.size(); ++i) {
        gsum += b.g[i];
        gh += b.g[i] * b.h[i];
    }
    CHECK(std::fabs(gsum) <= 1e-14);
    CHECK(std::fabs(gh) <= 1e-14);  // direct evaluation of the duality identity
}

TEST_CASE("K out of range is rejected") {
    CHECK_THROWS_AS(daubechies_filter(0), ValidationError);
    CHECK_THROWS_AS(daubechies_filter(11), ValidationError);
    CHECK_THROWS_AS(daubechies_filter(-3), ValidationError);
}

TEST_CASE("highpass_from_lowpass rejects non-orthonormal input") {
    std::vector<double> bad{1.0, 0.5, 0.25, 0.1};
    CHECK_THROWS_AS(highpass_from_lowpass(bad), InvariantError);
    std::vector<double> single{std::sqrt(2.0)};
    CHECK_THROWS_AS(highpass_from_lowpass(single), InvariantError);
}
