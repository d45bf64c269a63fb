#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "latscale/errors.hpp"
#include "latscale/gaussian_state.hpp"
#include "support/fock_oracle.hpp"

using namespace latscale;

namespace {
GaussianState two_site_state() {
    const LatticeSpec s = make_lattice(1, 1.0, 1, 0);
    return ground_state(HarmonicModel{s, 3.0, false});
}
}  // namespace

TEST_CASE("weyl_expectation: identity element and single-site form") {
    const GaussianState st = two_site_state();
    CHECK(std::abs(weyl_expectation(st, zero_descriptor(st.spec)) - 1.0) == 0.0);

    const double gphi = cov_phi(st, {0, 0, 0});
    const auto w = site_descriptor(st.spec, 0, 1.0, 0.0);
    const cdouble v = weyl_expectation(st, w);
    CHECK(std::abs(v - std::exp(-0.5 * gphi)) <= 1e-12);
    CHECK(std::abs(v) == doctest::Approx(std::exp(-0.3618034 / 2.0)).epsilon(1e-6));
    CHECK(std::abs(v) == doctest::Approx(0.8345174).epsilon(1e-6));
}

TEST_CASE("weyl_expectation against the truncated-Fock oracle, with doubling check") {
    const GaussianState st = two_site_state();
    const std::vector<double> f{0.8, -0.3};
    const std::vector<double> g{0.2, 0.5};
    WeylDescriptor w{st.spec, f, g};
    const cdouble impl = weyl_expectation(st, w);

    cdouble prev = 0.0;
    for (int nmax : {30, 60}) {
        fock_oracle::ChainOracle oracle(2, 1.0, 3.0, nmax);
        const auto psi = oracle.apply_weyl(f, g, oracle.vacuum());
        const cdouble val = oracle.inner(oracle.vacuum(), psi);
        if (nmax == 60) {
            CHECK(std::abs(val - impl) <= 1e-10);
            CHECK(std::abs(val - prev) <= 1e-10);  // truncation converged
        }
        prev = val;
    }
    CHECK(std::abs(impl) <= 1.0 + 1e-14);
}

TEST_CASE("weyl relations: CCR cocycle holds exactly") {
    const GaussianState st = two_site_state();
    const auto w1 = site_descriptor(st.spec, 0, 0.7, -0.2);
    const auto w2 = site_descriptor(st.spec, 1, -0.4, 0.9);
    // omega(W(a)W(b)) = e^{-(i/2) sigma(a,b)} omega(W(a+b))
    WeylDescriptor sum12{st.spec, {w1.f[0] + w2.f[0], w1.f[1] + w2.f[1]},
                         {w1.g[0] + w2.g[0], w1.g[1] + w2.g[1]}};
    const double sigma = symplectic_form(w1, w2);
    const cdouble lhs_by_phase = std::polar(1.0, -0.5 * sigma) * weyl_expectation(st, sum12);

    fock_oracle::ChainOracle oracle(2, 1.0, 3.0, 60);
    const auto psi2 = oracle.apply_weyl(w2.f, w2.g, oracle.vacuum());
    const auto psi12 = oracle.apply_weyl(w1.f, w1.g, psi2);
    const cdouble direct = oracle.inner(oracle.vacuum(), psi12);
    CHECK(std::abs(direct - lhs_by_phase) <= 1e-9);
}

TEST_CASE("coherent overlaps: normalization, Weyl reduction, Gaussian decay") {
    const GaussianState st = two_site_state();
    const auto w1 = site_descriptor(st.spec, 0, 1.2, 0.4);
    CHECK(std::abs(coherent_overlap(st, w1, w1) - 1.0) <= 1e-14);

    const auto w0 = zero_descriptor(st.spec);
    // <c(w1), Omega> equals a Weyl expectation up to the fixed phase convention
    CHECK(std::abs(std::abs(coherent_overlap(st, w1, w0)) -
                   std::abs(weyl_expectation(st, w1))) <= 1e-14);

    // far-separated large displacements are nearly orthogonal
    const auto big1 = site_descriptor(st.spec, 0, 14.0, 0.0);
    const auto big2 = site_descriptor(st.spec, 0, -14.0, 0.0);
    CHECK(std::abs(coherent_overlap(st, big1, big2)) < 1e-8);

    // Cauchy-Schwarz
    const auto wa = site_descriptor(st.spec, 0, 0.5, 1.0);
    const auto wb = site_descriptor(st.spec, 1, -1.0, 0.3);
    CHECK(std::abs(coherent_overlap(st, wa, wb)) <= 1.0 + 1e-14);

    // oracle cross-check of a nontrivial overlap
    fock_oracle::ChainOracle oracle(2, 1.0, 3.0, 60);
    const auto pa = oracle.apply_weyl(wa.f, wa.g, oracle.vacuum());
    const auto pb = oracle.apply_weyl(wb.f, wb.g, oracle.vacuum());
    CHECK(std::abs(oracle.inner(pa, pb) - coherent_overlap(st, wa, wb)) <= 1e-9);
}

TEST_CASE("wick correlator: odd vanishes, cross pair is i/2 delta") {
    const GaussianState st = two_site_state();
    CHECK(std::abs(wick_correlator(st, {{FieldKind::phi, 0}})) == 0.0);
    CHECK(std::abs(wick_correlator(st, {{FieldKind::phi, 0},
                                        {FieldKind::phi, 1},
                                        {FieldKind::pi, 0}})) == 0.0);
    const cdouble fp = wick_correlator(st, {{FieldKind::phi, 1}, {FieldKind::pi, 1}});
    CHECK(std::abs(fp - cdouble(0.0, 0.5)) <= 1e-13);
}

TEST_CASE("wick four-point equals the three-pairing formula and the Fock oracle") {
    const LatticeSpec s = make_lattice(1, 1.0, 1, 0);  // 2 sites keeps the oracle space small
    const GaussianState st = ground_state(HarmonicModel{s, 3.0, false});

    auto G = [&](std::int64_t x, std::int64_t y) {
        return pair_correlator(st, FieldKind::phi, x, FieldKind::phi, y);
    };
    const cdouble four = wick_correlator(
        st, {{FieldKind::phi, 0}, {FieldKind::phi, 1}, {FieldKind::phi, 0}, {FieldKind::phi, 1}});
    const cdouble pairs = G(0, 1) * G(0, 1) + G(0, 0) * G(1, 1) + G(0, 1) * G(1, 0);
    CHECK(std::abs(four - pairs) <= 1e-13);

    fock_oracle::ChainOracle oracle(2, 1.0, 3.0, 8);  // polynomial insertions are exact
    auto v = oracle.vacuum();
    std::vector<fock_oracle::cdouble> v1(oracle.dim, 0.0);
    oracle.apply_field(v1, v, 1, false);
    std::vector<fock_oracle::cdouble> v2(oracle.dim, 0.0);
    oracle.apply_field(v2, v1, 0, false);
    std::vector<fock_oracle::cdouble> v3(oracle.dim, 0.0);
    oracle.apply_field(v3, v2, 1, false);
    std::vector<fock_oracle::cdouble> v4(oracle.dim, 0.0);
    oracle.apply_field(v4, v3, 0, false);
    CHECK(std::abs(oracle.inner(v, v4) - four) <= 1e-12);
}

TEST_CASE("derivative consistency: finite differences of Weyl reproduce two-point values") {
    const GaussianState st = two_site_state();
    // -d^2/dt^2 omega(e^{i t Phi(x)}) at t=0 equals <Phi(x)^2>
    const double t = 1e-4;
    const auto wp = site_descriptor(st.spec, 0, t, 0.0);
    const auto wm = site_descriptor(st.spec, 0, -t, 0.0);
    const cdouble num = -(weyl_expectation(st, wp) - 2.0 + weyl_expectation(st, wm)) / (t * t);
    const cdouble direct = wick_correlator(st, {{FieldKind::phi, 0}, {FieldKind::phi, 0}});
    CHECK(std::abs(num - direct) <= 1e-6);
}

TEST_CASE("displaced states shift Weyl expectations by a phase") {
    GaussianState st = two_site_state();
    st.mean_phi.assign(2, 0.0);
    st.mean_pi.assign(2, 0.0);
    st.mean_phi[0] = 0.9;
    const auto w = site_descriptor(st.spec, 0, 1.0, 0.0);
    GaussianState base = two_site_state();
    const cdouble shifted = weyl_expectation(st, w);
    const cdouble plain = weyl_expectation(base, w);
    CHECK(std::abs(shifted - std::polar(1.0, 0.9) * plain) <= 1e-13);
    // displaced one-point function
    const cdouble mean = wick_correlator(st, {{FieldKind::phi, 0}});
    CHECK(std::abs(mean - 0.9) <= 1e-13);
}

TEST_CASE("lattice mismatch raises a domain error") {
    const GaussianState st = two_site_state();
    const LatticeSpec other = make_lattice(1, 1.0, 2, 0);
    CHECK_THROWS_AS(weyl_expectation(st, zero_descriptor(other)), ValidationError);
}
