#include "latscale/gaussian_state.hpp"

#include <cmath>

#include "latscale/errors.hpp"
#include "latscale/kernels.hpp"

namespace latscale {

namespace {

void check_same_lattice(const LatticeSpec& a, const LatticeSpec& b, const char* where) {
    if (a.d != b.d || a.eps0 != b.eps0 || a.L0 != b.L0 || a.N != b.N)
        throw ValidationError(std::string(where) + ": descriptor lattice does not match state");
}

// e^{-i k x} phases over all momenta for one site index; k.x reduces to
// 2 pi (j . n)/V per dimension, so a single V-entry table serves any d.
struct PhaseTable {
    std::int64_t V;
    std::vector<double> c, s;
    explicit PhaseTable(std::int64_t sites) : V(sites), c(sites), s(sites) {
        for (std::int64_t q = 0; q < V; ++q) {
            const double a = 2.0 * M_PI * static_cast<double>(q) / static_cast<double>(V);
            c[q] = std::cos(a);
            s[q] = std::sin(a);
        }
    }
    std::int64_t fold(std::int64_t p) const {
        p %= V;
        return p < 0 ? p + V : p;
    }
};

// f_hat(k_idx) = sum_x f_x e^{-i k x}
std::vector<cdouble> mode_transform(const LatticeSpec& spec, const std::vector<double>& f) {
    const std::int64_t vol = spec.volume();
    std::vector<cdouble> out(vol, 0.0);
    PhaseTable tab(spec.sites_per_dim());
    for (std::int64_t x = 0; x < vol; ++x) {
        if (f[x] == 0.0) continue;
        const auto n = spec.unflatten(x);
        for (std::int64_t m = 0; m < vol; ++m) {
            const auto j = spec.unflatten(m);
            std::int64_t dotp = 0;
            for (int i = 0; i < spec.d; ++i) dotp += j[i] * n[i];
            const std::int64_t q = tab.fold(dotp);
            out[m] += f[x] * cdouble(tab.c[q], -tab.s[q]);
        }
    }
    return out;
}

double quadratic_form(const GaussianState& state, const std::vector<cdouble>& fh,
                      const std::vector<cdouble>& gh) {
    const std::int64_t vol = state.spec.volume();
    const std::int64_t zero = state.spec.flatten({0, 0, 0});
    double q = 0.0;
    for (std::int64_t m = 0; m < vol; ++m) {
        if (state.zero_mode_excluded && m == zero) continue;
        const double f2 = std::norm(fh[m]);
        const double g2 = std::norm(gh[m]);
        q += state.cphi[m] * f2 + state.cpi[m] * g2 +
             2.0 * std::real(state.cross[m] * std::conj(fh[m]) * gh[m]);
    }
    return q / static_cast<double>(vol);
}

}  // namespace

WeylDescriptor zero_descriptor(const LatticeSpec& spec) {
    return WeylDescriptor{spec, std::vector<double>(spec.volume(), 0.0),
                          std::vector<double>(spec.volume(), 0.0)};
}

WeylDescriptor site_descriptor(const LatticeSpec& spec, std::int64_t site, double famp,
                               double gamp) {
    WeylDescriptor w = zero_descriptor(spec);
    w.f[site] = famp;
    w.g[site] = gamp;
    return w;
}

double min_uncertainty_gap(const GaussianState& state) {
    const std::int64_t vol = state.spec.volume();
    const std::int64_t zero = state.spec.flatten({0, 0, 0});
    double gap = 1e300;
    for (std::int64_t m = 0; m < vol; ++m) {
        if (state.zero_mode_excluded && m == zero) continue;
        const double im = std::imag(state.cross[m]);
        gap = std::min(gap, state.cphi[m] * state.cpi[m] - im * im);
    }
    return gap;
}

void validate_state(const GaussianState& state, double tol) {
    const std::int64_t vol = state.spec.volume();
    if (static_cast<std::int64_t>(state.cphi.size()) != vol ||
        static_cast<std::int64_t>(state.cpi.size()) != vol ||
        static_cast<std::int64_t>(state.cross.size()) != vol)
        throw InvariantError("gaussian state: covariance arrays sized off-lattice");
    const std::int64_t zero = state.spec.flatten({0, 0, 0});
    for (std::int64_t m = 0; m < vol; ++m) {
        if (state.zero_mode_excluded && m == zero) continue;
        if (state.cphi[m] < -tol || state.cpi[m] < -tol)
            throw InvariantError("gaussian state: negative mode variance");
    }
    if (min_uncertainty_gap(state) < -tol)
        throw InvariantError("gaussian state: uncertainty product below 1/4");
}

GaussianState ground_state(const HarmonicModel& model) {
    const LatticeSpec& spec = model.spec;
    const double eps = spec.eps();
    GaussianState st;
    st.spec = spec;
    st.zero_mode_excluded = model.zero_mode_excluded;
    const std::int64_t vol = spec.volume();
    st.cphi.assign(vol, 0.0);
    st.cpi.assign(vol, 0.0);
    st.cross.assign(vol, cdouble(0.0, 0.5));
    const std::vector<double> gam = dispersion_table(model);
    const std::int64_t zero = spec.flatten({0, 0, 0});
    for (std::int64_t m = 0; m < vol; ++m) {
        if (gam[m] <= 0.0) {
            if (m == zero && model.zero_mode_excluded) {
                st.cphi[m] = st.cpi[m] = 0.0;
                st.cross[m] = 0.0;
                continue;
            }
            throw ValidationError("ground_state: zero mode has gamma = 0; pass the "
                                  "zero-mode exclusion flag");
        }
        st.cphi[m] = 1.0 / (2.0 * eps * gam[m]);
        st.cpi[m] = eps * gam[m] / 2.0;
    }
    return st;
}

double covariance_energy(const HarmonicModel& model, const GaussianState& state) {
    // H = eps^-1 [ (1/2) sum (Pi^2 + mu^2 Phi^2) - sum_<xy> Phi Phi ]
    //   = sum_k (1/2) [ eps^-1 cpi(k) + eps gamma(k)^2 cphi(k) ]
    const std::vector<double> gam = dispersion_table(model);
    const double eps = model.spec.eps();
    double e = 0.0;
    for (std::size_t m = 0; m < gam.size(); ++m)
        e += 0.5 * (state.cpi[m] / eps + eps * gam[m] * gam[m] * state.cphi[m]);
    return e;
}

cdouble weyl_expectation(const GaussianState& state, const WeylDescriptor& w) {
    check_same_lattice(state.spec, w.spec, "weyl_expectation");
    const auto fh = mode_transform(state.spec, w.f);
    const auto gh = mode_transform(state.spec, w.g);
    const double Q = quadratic_form(state, fh, gh);
    double phase = 0.0;
    if (state.displaced()) {
        const std::int64_t vol = state.spec.volume();
        if (!state.mean_phi.empty()) phase += kernels::dot(state.mean_phi.data(), w.f.data(), vol);
        if (!state.mean_pi.empty()) phase += kernels::dot(state.mean_pi.data(), w.g.data(), vol);
    }
    return std::polar(std::exp(-0.5 * Q), phase);
}

double symplectic_form(const WeylDescriptor& a, const WeylDescriptor& b) {
    check_same_lattice(a.spec, b.spec, "symplectic_form");
    const std::int64_t vol = a.spec.volume();
    return kernels::dot(a.f.data(), b.g.data(), vol) - kernels::dot(a.g.data(), b.f.data(), vol);
}

cdouble coherent_overlap(const GaussianState& state, const WeylDescriptor& w1,
                         const WeylDescriptor& w2) {
    check_same_lattice(state.spec, w1.spec, "coherent_overlap");
    check_same_lattice(state.spec, w2.spec, "coherent_overlap");
    const std::int64_t vol = state.spec.volume();
    WeylDescriptor diff = zero_descriptor(state.spec);
    for (std::int64_t i = 0; i < vol; ++i) {
        diff.f[i] = w2.f[i] - w1.f[i];
        diff.g[i] = w2.g[i] - w1.g[i];
    }
    const double phase = 0.5 * symplectic_form(w1, w2);
    return std::polar(1.0, phase) * weyl_expectation(state, diff);
}

cdouble pair_correlator(const GaussianState& state, FieldKind a, std::int64_t x, FieldKind b,
                        std::int64_t y) {
    const LatticeSpec& spec = state.spec;
    const std::int64_t vol = spec.volume();
    PhaseTable tab(spec.sites_per_dim());
    const auto nx = spec.unflatten(x);
    const auto ny = spec.unflatten(y);
    const std::int64_t zero = spec.flatten({0, 0, 0});
    cdouble acc = 0.0;
    for (std::int64_t m = 0; m < vol; ++m) {
        if (state.zero_mode_excluded && m == zero) continue;
        const auto j = spec.unflatten(m);
        std::int64_t dotp = 0;
        for (int i = 0; i < spec.d; ++i) dotp += j[i] * (nx[i] - ny[i]);
        const std::int64_t q = tab.fold(dotp);
        const cdouble phase(tab.c[q], tab.s[q]);  // e^{+i k (x-y)}
        cdouble c;
        if (a == FieldKind::phi && b == FieldKind::phi) c = state.cphi[m];
        else if (a == FieldKind::pi && b == FieldKind::pi) c = state.cpi[m];
        else if (a == FieldKind::phi) c = state.cross[m];
        else c = std::conj(state.cross[m]);
        acc += c * phase;
    }
    return acc / static_cast<double>(vol);
}

namespace {

cdouble wick_recursive(const GaussianState& state, const std::vector<Insertion>& ins,
                       std::vector<int>& alive, int n_alive) {
    if (n_alive == 0) return 1.0;
    int first = -1;
    for (std::size_t i = 0; i < alive.size(); ++i)
        if (alive[i]) {
            first = static_cast<int>(i);
            break;
        }
    cdouble total = 0.0;
    if (state.displaced()) {
        const auto& a = ins[first];
        const double mean = (a.kind == FieldKind::phi)
                                ? (state.mean_phi.empty() ? 0.0 : state.mean_phi[a.site])
                                : (state.mean_pi.empty() ? 0.0 : state.mean_pi[a.site]);
        if (mean != 0.0) {
            alive[first] = 0;
            total += mean * wick_recursive(state, ins, alive, n_alive - 1);
            alive[first] = 1;
        }
    }
    for (std::size_t j = first + 1; j < alive.size(); ++j) {
        if (!alive[j]) continue;
        const cdouble p = pair_correlator(state, ins[first].kind, ins[first].site, ins[j].kind,
                                          ins[j].site);
        alive[first] = alive[j] = 0;
        total += p * wick_recursive(state, ins, alive, n_alive - 2);
        alive[first] = alive[j] = 1;
    }
    return total;
}

}  // namespace

cdouble wick_correlator(const GaussianState& state, const std::vector<Insertion>& ins) {
    if (ins.empty()) return 1.0;
    if (!state.displaced() && ins.size() % 2 == 1) return 0.0;
    std::vector<int> alive(ins.size(), 1);
    return wick_recursive(state, ins, alive, static_cast<int>(ins.size()));
}

namespace {
double cov_kernel(const GaussianState& state, const double* block,
                  const std::array<std::int64_t, 3>& delta) {
    const LatticeSpec& spec = state.spec;
    const std::int64_t vol = spec.volume();
    PhaseTable tab(spec.sites_per_dim());
    const std::int64_t zero = spec.flatten({0, 0, 0});
    double acc = 0.0;
    for (std::int64_t m = 0; m < vol; ++m) {
        if (state.zero_mode_excluded && m == zero) continue;
        const auto j = spec.unflatten(m);
        std::int64_t dotp = 0;
        for (int i = 0; i < spec.d; ++i) dotp += j[i] * delta[i];
        acc += block[m] * tab.c[tab.fold(dotp)];
    }
    return acc / static_cast<double>(vol);
}
}  // namespace

double cov_phi(const GaussianState& state, const std::array<std::int64_t, 3>& delta) {
    return cov_kernel(state, state.cphi.data(), delta);
}

double cov_pi(const GaussianState& state, const std::array<std::int64_t, 3>& delta) {
    return cov_kernel(state, state.cpi.data(), delta);
}

}  // namespace latscale
