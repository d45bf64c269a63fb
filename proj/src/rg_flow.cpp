#include "latscale/rg_flow.hpp"

#include <cmath>
#include <limits>

#include "latscale/errors.hpp"
#include "latscale/kernels.hpp"

namespace latscale {

namespace {

constexpr std::int64_t kDenseCap = 1024;  // fine-volume cap for the dense oracle path

std::vector<double> compose_taps(const std::vector<double>& coarse,
                                 const std::vector<double>& h) {
    // T_{l+1} = up2(T_l) * h
    const std::size_t up_len = 2 * coarse.size() - 1;
    std::vector<double> out(up_len + h.size() - 1, 0.0);
    for (std::size_t i = 0; i < coarse.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) out[2 * i + j] += coarse[i] * h[j];
    return out;
}

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

}  // namespace

OneParticleMap build_map(const LatticeSpec& from, const LatticeSpec& to,
                         const FilterBank& bank) {
    if (!from.compatible_torus(to))
        throw ValidationError("build_map: lattices live on different tori");
    if (to.N < from.N)
        throw ValidationError(
            "build_map: coarse graining runs fine -> coarse only (to.N >= from.N)");
    OneParticleMap map;
    map.from = from;
    map.to = to;
    map.bank = bank;
    const int M = to.N - from.N;
    map.phi_prefactor = std::pow(2.0, -0.5 * M);
    map.pi_prefactor = std::pow(2.0, +0.5 * M);
    map.taps = {1.0};
    for (int l = 0; l < M; ++l) map.taps = compose_taps(map.taps, bank.h);
    return map;
}

OneParticleMap compose(const OneParticleMap& a, const OneParticleMap& b) {
    if (a.to.N != b.from.N || !a.to.compatible_torus(b.from))
        throw ValidationError("compose: maps are not chainable");
    OneParticleMap map;
    map.from = a.from;
    map.to = b.to;
    map.bank = a.bank;
    // derive prefactors from the composed step count so that composition is
    // bit-identical to the directly built map
    const int M = a.steps() + b.steps();
    map.phi_prefactor = std::pow(2.0, -0.5 * M);
    map.pi_prefactor = std::pow(2.0, +0.5 * M);
    map.taps = a.taps;
    for (int l = 0; l < b.steps(); ++l) map.taps = compose_taps(map.taps, b.bank.h);
    return map;
}

namespace {

Dense dense_map(const OneParticleMap& map, double prefactor) {
    const LatticeSpec& cs = map.from;
    const LatticeSpec& fs = map.to;
    const std::int64_t stride = std::int64_t(1) << map.steps();
    Dense A(cs.volume(), fs.volume());
    const std::int64_t tlen = static_cast<std::int64_t>(map.taps.size());
    const std::int64_t Vf = fs.sites_per_dim();
    for (std::int64_t x = 0; x < cs.volume(); ++x) {
        const auto nx = cs.unflatten(x);
        std::array<std::int64_t, 3> p{0, 0, 0};
        while (true) {
            double w = prefactor;
            std::array<std::int64_t, 3> v{0, 0, 0};
            for (int i = 0; i < cs.d; ++i) {
                w *= map.taps[p[i]];
                v[i] = ((stride * nx[i] + p[i] + fs.halfsites()) % Vf + Vf) % Vf -
                       fs.halfsites();
            }
            A(x, fs.flatten(v)) += w;
            int dim = 0;
            while (dim < cs.d && ++p[dim] == tlen) p[dim++] = 0;
            if (dim == cs.d) break;
        }
    }
    return A;
}

}  // namespace

Dense dense_phi(const OneParticleMap& map) { return dense_map(map, map.phi_prefactor); }
Dense dense_pi(const OneParticleMap& map) { return dense_map(map, map.pi_prefactor); }

double ccr_residual(const OneParticleMap& map) {
    const Dense aphi = dense_phi(map);
    const Dense api = dense_pi(map);
    return identity_residual(matmul_bt(aphi, api));
}

namespace {

// position kernel kern[delta_index] of a per-mode array
std::vector<double> position_kernel(const LatticeSpec& spec, const std::vector<double>& modes) {
    const std::int64_t vol = spec.volume();
    PhaseTable tab(spec.sites_per_dim());
    std::vector<double> kern(vol, 0.0);
    for (std::int64_t didx = 0; didx < vol; ++didx) {
        const auto dt = spec.unflatten(didx);
        double acc = 0.0;
        for (std::int64_t m = 0; m < vol; ++m) {
            const auto j = spec.unflatten(m);
            std::int64_t dotp = 0;
            for (int i = 0; i < spec.d; ++i) dotp += j[i] * dt[i];
            acc += modes[m] * tab.c[tab.fold(dotp)];
        }
        kern[didx] = acc / static_cast<double>(vol);
    }
    return kern;
}

Dense kernel_to_matrix(const LatticeSpec& spec, const std::vector<double>& kern) {
    const std::int64_t vol = spec.volume();
    Dense C(vol, vol);
    for (std::int64_t x = 0; x < vol; ++x) {
        const auto nx = spec.unflatten(x);
        for (std::int64_t y = 0; y < vol; ++y) {
            const auto ny = spec.unflatten(y);
            std::array<std::int64_t, 3> dt{0, 0, 0};
            for (int i = 0; i < spec.d; ++i) dt[i] = nx[i] - ny[i];
            C(x, y) = kern[spec.flatten(dt)];
        }
    }
    return C;
}

// per-mode array from a translation-invariant position matrix (site-0 row)
std::vector<double> matrix_to_modes(const LatticeSpec& spec, const Dense& C) {
    const std::int64_t vol = spec.volume();
    PhaseTable tab(spec.sites_per_dim());
    const std::int64_t x0 = spec.flatten({0, 0, 0});
    std::vector<double> modes(vol, 0.0);
    for (std::int64_t m = 0; m < vol; ++m) {
        const auto j = spec.unflatten(m);
        double acc = 0.0;
        for (std::int64_t y = 0; y < vol; ++y) {
            const auto ny = spec.unflatten(y);
            std::int64_t dotp = 0;
            for (int i = 0; i < spec.d; ++i) dotp += j[i] * ny[i];
            // c(k) = sum_y C(x0, y) e^{-i k (x0 - y)} with x0 at the origin
            acc += C(x0, y) * tab.c[tab.fold(dotp)];
        }
        modes[m] = acc;
    }
    return modes;
}

std::vector<double> pull_mean(const OneParticleMap& map, const Dense& A,
                              const std::vector<double>& mean) {
    std::vector<double> out(map.from.volume(), 0.0);
    for (std::int64_t x = 0; x < map.from.volume(); ++x)
        out[x] = kernels::dot(A.row(x), mean.data(), map.to.volume());
    return out;
}

}  // namespace

GaussianState renormalize_state(const GaussianState& state, const OneParticleMap& map) {
    if (state.spec.N != map.to.N || !state.spec.compatible_torus(map.to))
        throw ValidationError("renormalize_state: state lattice does not match map.to");
    if (state.zero_mode_excluded)
        throw ValidationError(
            "renormalize_state: zero-mode-excluded states are not coarse-grainable");
    if (map.steps() == 0) return state;
    if (map.to.volume() > kDenseCap)
        throw ValidationError("renormalize_state: dense oracle path capped at 1024 fine sites; "
                              "use momentum_fast_path");

    const Dense aphi = dense_phi(map);
    const Dense api = dense_pi(map);

    const Dense Cphi = kernel_to_matrix(map.to, position_kernel(map.to, state.cphi));
    const Dense Cpi = kernel_to_matrix(map.to, position_kernel(map.to, state.cpi));
    std::vector<double> cross_re(state.cross.size()), cross_im(state.cross.size());
    for (std::size_t i = 0; i < state.cross.size(); ++i) {
        cross_re[i] = state.cross[i].real();
        cross_im[i] = state.cross[i].imag();
    }
    const Dense Xre = kernel_to_matrix(map.to, position_kernel(map.to, cross_re));
    const Dense Xim = kernel_to_matrix(map.to, position_kernel(map.to, cross_im));

    GaussianState out;
    out.spec = map.from;
    out.cphi = matrix_to_modes(map.from, matmul_bt(matmul(aphi, Cphi), aphi));
    out.cpi = matrix_to_modes(map.from, matmul_bt(matmul(api, Cpi), api));
    const auto xre = matrix_to_modes(map.from, matmul_bt(matmul(aphi, Xre), api));
    const auto xim = matrix_to_modes(map.from, matmul_bt(matmul(aphi, Xim), api));
    out.cross.resize(out.cphi.size());
    for (std::size_t i = 0; i < out.cross.size(); ++i) out.cross[i] = cdouble(xre[i], xim[i]);
    if (!state.mean_phi.empty()) out.mean_phi = pull_mean(map, aphi, state.mean_phi);
    if (!state.mean_pi.empty()) out.mean_pi = pull_mean(map, api, state.mean_pi);
    return out;
}

namespace {

// one fold step, fine scale N+1 -> coarse scale N
GaussianState fold_once(const GaussianState& fine, const FilterBank& bank) {
    const LatticeSpec& fs = fine.spec;
    LatticeSpec cs = fs;
    cs.N -= 1;
    const std::int64_t Lf = fs.halfsites();

    // per-dim |m0(pi j / L_f)|^2 over the fine Brillouin zone
    std::vector<double> w(fs.sites_per_dim());
    for (std::int64_t j = -Lf; j < Lf; ++j)
        w[j + Lf] = std::norm(m0(bank, M_PI * static_cast<double>(j) / static_cast<double>(Lf)));

    GaussianState out;
    out.spec = cs;
    const std::int64_t vol = cs.volume();
    out.cphi.assign(vol, 0.0);
    out.cpi.assign(vol, 0.0);
    out.cross.assign(vol, 0.0);

    const int d = cs.d;
    for (std::int64_t c = 0; c < vol; ++c) {
        const auto j0 = cs.unflatten(c);
        for (int sector = 0; sector < (1 << d); ++sector) {
            std::array<std::int64_t, 3> jf{0, 0, 0};
            double weight = 1.0;
            for (int i = 0; i < d; ++i) {
                std::int64_t j = j0[i];
                if ((sector >> i) & 1) j += (j0[i] < 0) ? Lf : -Lf;
                jf[i] = j;
                weight *= w[j + Lf];
            }
            const std::int64_t f = fs.flatten(jf);
            out.cphi[c] += 0.5 * weight * fine.cphi[f];
            out.cpi[c] += 2.0 * weight * fine.cpi[f];
            out.cross[c] += weight * fine.cross[f];
        }
    }

    if (!fine.mean_phi.empty() || !fine.mean_pi.empty()) {
        const double rt2 = std::sqrt(2.0);
        auto pull = [&](const std::vector<double>& mean, double pref) {
            std::vector<double> outm(vol, 0.0);
            const std::int64_t tlen = static_cast<std::int64_t>(bank.h.size());
            const std::int64_t Vf = fs.sites_per_dim();
            for (std::int64_t x = 0; x < vol; ++x) {
                const auto nx = cs.unflatten(x);
                std::array<std::int64_t, 3> p{0, 0, 0};
                while (true) {
                    double wgt = pref;
                    std::array<std::int64_t, 3> v{0, 0, 0};
                    for (int i = 0; i < d; ++i) {
                        wgt *= bank.h[p[i]];
                        v[i] = ((2 * nx[i] + p[i] + fs.halfsites()) % Vf + Vf) % Vf -
                               fs.halfsites();
                    }
                    outm[x] += wgt * mean[fs.flatten(v)];
                    int dim = 0;
                    while (dim < d && ++p[dim] == tlen) p[dim++] = 0;
                    if (dim == d) break;
                }
            }
            return outm;
        };
        if (!fine.mean_phi.empty()) out.mean_phi = pull(fine.mean_phi, 1.0 / rt2);
        if (!fine.mean_pi.empty()) out.mean_pi = pull(fine.mean_pi, rt2);
    }
    return out;
}

}  // namespace

GaussianState momentum_fast_path(const GaussianState& state, const OneParticleMap& map) {
    if (state.spec.N != map.to.N || !state.spec.compatible_torus(map.to))
        throw ValidationError("momentum_fast_path: state lattice does not match map.to");
    if (state.zero_mode_excluded)
        throw ValidationError(
            "momentum_fast_path: zero-mode-excluded states are not coarse-grainable");
    GaussianState cur = state;
    for (int l = 0; l < map.steps(); ++l) cur = fold_once(cur, map.bank);
    return cur;
}

LimitState scaling_limit_state(const LatticeSpec& spec, double m, const FilterBank& bank,
                               double tol, int sectors, bool allow_divergent_pi) {
    if (m <= 0.0) throw ValidationError("scaling_limit_state: m must be positive");
    if (bank.K == 1 && !allow_divergent_pi)
        throw ValidationError("scaling_limit_state: Haar momentum block diverges (Sobolev "
                              "H^{1/2} fails); pass the divergence flag for the Phi block");

    const int d = spec.d;
    const std::int64_t V = spec.sites_per_dim();
    const std::int64_t LN = spec.halfsites();
    const double epsN = spec.eps();
    const double Lphys = spec.L();

    const std::int64_t vol = spec.volume();
    LimitState out;
    out.state.spec = spec;
    out.state.cphi.assign(vol, 0.0);
    out.state.cpi.assign(vol, 0.0);
    out.state.cross.assign(vol, cdouble(0.0, 0.5));
    out.m = m;
    out.K = bank.K;

    // symmetric per-dimension window |j'| <= J, J = V * S / 2 (i.e. the spec's
    // |k_j| <= K_max truncation).  Matched-cutoff coarse graining maps the
    // scale-(N+1) window onto the scale-N window with the same K_max exactly.
    const std::int64_t cap = (d == 1) ? (std::int64_t(1) << 23)
                                      : (d == 2 ? (std::int64_t(1) << 12) : 256);
    std::int64_t S = (sectors > 0) ? sectors : 4;
    if (S % 2) ++S;
    if (sectors > 0 && S > cap)
        throw ValidationError("scaling_limit_state: requested sectors exceed the cap");

    double shell_phi = 0.0, shell_pi = 0.0, prev_shell_pi = -1.0;
    double ratio_pi = 0.5;
    std::int64_t j_done = -1;  // |j'| <= j_done already accumulated

    while (true) {
        const std::int64_t J = V * (S / 2);
        const std::vector<double> W = symbol_sq_grid(bank, M_PI / static_cast<double>(LN),
                                                     static_cast<std::size_t>(J) + 1);
        std::vector<double> addp(vol, 0.0), addi(vol, 0.0);
        std::array<std::int64_t, 3> it{0, 0, 0};
        const std::int64_t span = 2 * J + 1;
        while (true) {
            std::array<std::int64_t, 3> jp{0, 0, 0};
            bool is_new = false;
            for (int i = 0; i < d; ++i) {
                jp[i] = it[i] - J;
                if (std::llabs(jp[i]) > j_done) is_new = true;
            }
            if (is_new) {
                double w = 1.0;
                double k2 = 0.0;
                std::array<std::int64_t, 3> res{0, 0, 0};
                for (int i = 0; i < d; ++i) {
                    w *= W[static_cast<std::size_t>(std::llabs(jp[i]))];
                    const double k = M_PI * static_cast<double>(jp[i]) / Lphys;
                    k2 += k * k;
                    res[i] = ((jp[i] + LN) % V + V) % V - LN;
                }
                const std::int64_t c = spec.flatten(res);
                const double gam = std::sqrt(m * m + k2);
                addp[c] += w / (2.0 * epsN * gam);
                addi[c] += w * epsN * gam / 2.0;
            }
            int dim = 0;
            while (dim < d && ++it[dim] == span) it[dim++] = 0;
            if (dim == d) break;
        }
        kernels::add(out.state.cphi.data(), addp.data(), vol);
        kernels::add(out.state.cpi.data(), addi.data(), vol);
        shell_phi = kernels::max_abs(addp.data(), vol);
        shell_pi = kernels::max_abs(addi.data(), vol);
        if (j_done >= 0 && prev_shell_pi > 0.0 && shell_pi > 0.0)
            ratio_pi = std::min(0.95, shell_pi / prev_shell_pi);
        prev_shell_pi = shell_pi;
        j_done = J;

        if (sectors > 0) break;
        const double tail_est = shell_pi * ratio_pi / std::max(1e-12, 1.0 - ratio_pi);
        if (bank.K >= 2 && tail_est < tol) break;
        if (bank.K == 1 && shell_phi < tol) break;  // phi block converges for Haar
        if (S * 2 > cap) {
            if (bank.K == 1) break;  // divergent pi block acknowledged by the flag
            throw ValidationError("scaling_limit_state: sector cap reached before tolerance");
        }
        S *= 2;
    }

    out.sectors = static_cast<int>(2 * j_done / V);
    out.kmax = M_PI * static_cast<double>(j_done) / Lphys;
    out.tail_pi = shell_pi * ratio_pi / std::max(1e-12, 1.0 - ratio_pi);
    out.tail_phi = shell_phi * 0.25;
    out.pi_divergent = (bank.K == 1);
    if (out.pi_divergent) out.tail_pi = std::numeric_limits<double>::infinity();
    return out;
}

std::vector<double> pi_block_partial_sums(const LatticeSpec& spec, double m,
                                          const FilterBank& bank,
                                          const std::vector<double>& cutoffs) {
    if (spec.d != 1) throw ValidationError("pi_block_partial_sums: d = 1 diagnostic");
    const double Lphys = spec.L();
    const double epsN = spec.eps();
    const std::int64_t LN = spec.halfsites();
    std::vector<double> out;
    const std::int64_t jtop =
        static_cast<std::int64_t>(std::floor(cutoffs.back() * Lphys / M_PI));
    const std::vector<double> W = symbol_sq_grid(bank, M_PI / static_cast<double>(LN),
                                                 static_cast<std::size_t>(jtop) + 1);
    for (double cut : cutoffs) {
        const std::int64_t jcut = static_cast<std::int64_t>(std::floor(cut * Lphys / M_PI));
        double acc = 0.0;
        for (std::int64_t j = -jcut; j <= jcut; ++j) {
            const double k = M_PI * static_cast<double>(j) / Lphys;
            const double gam = std::sqrt(m * m + k * k);
            acc += W[static_cast<std::size_t>(std::llabs(j))] * epsN * gam / 2.0;
        }
        out.push_back(acc / (2.0 * Lphys));
    }
    return out;
}

GaussianState flow_state(const LatticeSpec& spec, double m, std::optional<double> fixed_mu,
                         const FilterBank& bank, int M) {
    const LatticeSpec fine = spec.refined(M);
    const HarmonicModel model =
        fixed_mu ? fixed_mu_model(fine, *fixed_mu) : trajectory_model(fine, m);
    const GaussianState gs = ground_state(model);
    const OneParticleMap map = build_map(spec, fine, bank);
    return momentum_fast_path(gs, map);
}

GaussianState flow_richardson(const LatticeSpec& spec, double m, const FilterBank& bank,
                              int Mmax) {
    if (Mmax < 2) throw ValidationError("flow_richardson: need Mmax >= 2");
    const GaussianState s0 = flow_state(spec, m, std::nullopt, bank, Mmax - 2);
    const GaussianState s1 = flow_state(spec, m, std::nullopt, bank, Mmax - 1);
    const GaussianState s2 = flow_state(spec, m, std::nullopt, bank, Mmax);
    const double x0 = std::pow(2.0, -(Mmax - 2));
    const double x1 = std::pow(2.0, -(Mmax - 1));
    const double x2 = std::pow(2.0, -Mmax);
    // Lagrange extrapolation of a quadratic in x = 2^-M to x = 0
    const double w0 = (x1 * x2) / ((x0 - x1) * (x0 - x2));
    const double w1 = (x0 * x2) / ((x1 - x0) * (x1 - x2));
    const double w2 = (x0 * x1) / ((x2 - x0) * (x2 - x1));
    GaussianState out = s2;
    for (std::size_t i = 0; i < out.cphi.size(); ++i) {
        out.cphi[i] = w0 * s0.cphi[i] + w1 * s1.cphi[i] + w2 * s2.cphi[i];
        out.cpi[i] = w0 * s0.cpi[i] + w1 * s1.cpi[i] + w2 * s2.cpi[i];
        out.cross[i] = w0 * s0.cross[i] + w1 * s1.cross[i] + w2 * s2.cross[i];
    }
    return out;
}

FlowReport flow_report(const LatticeSpec& spec, double m, std::optional<double> fixed_mu,
                       const FilterBank& bank, int M_max) {
    if (M_max < 2) throw ValidationError("flow_report: M_max must be >= 2");
    FlowReport rep;
    rep.trajectory = !fixed_mu.has_value();

    std::vector<GaussianState> states;
    for (int M = 0; M <= M_max; ++M) states.push_back(flow_state(spec, m, fixed_mu, bank, M));

    LimitState limit;
    const bool with_limit = rep.trajectory && bank.K >= 2;
    // flow residuals at desk-scale M_max sit well above 1e-5; the reference
    // limit only needs to be an order below them
    if (with_limit) limit = scaling_limit_state(spec, m, bank, 1e-5);

    const std::int64_t vol = spec.volume();
    for (int M = 0; M <= M_max; ++M) {
        FlowRow row;
        row.M = M;
        if (M < M_max) {
            row.dist_next_phi =
                kernels::max_abs_diff(states[M].cphi.data(), states[M + 1].cphi.data(), vol);
            row.dist_next_pi =
                kernels::max_abs_diff(states[M].cpi.data(), states[M + 1].cpi.data(), vol);
        }
        if (with_limit) {
            row.resid_phi =
                kernels::max_abs_diff(states[M].cphi.data(), limit.state.cphi.data(), vol);
            row.resid_pi =
                kernels::max_abs_diff(states[M].cpi.data(), limit.state.cpi.data(), vol);
        }
        const double g0 = cov_phi(states[M], {0, 0, 0});
        row.ultralocal_ratio = std::fabs(cov_phi(states[M], {1, 0, 0})) / g0;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace latscale
