#include "latscale/lattice.hpp"

#include <cmath>

#include "latscale/errors.hpp"

namespace latscale {

std::int64_t LatticeSpec::volume() const {
    std::int64_t v = 1;
    for (int i = 0; i < d; ++i) v *= sites_per_dim();
    return v;
}

LatticeSpec LatticeSpec::refined(int steps) const {
    LatticeSpec s = *this;
    s.N += steps;
    if (s.N < 0) throw ValidationError("lattice: negative scale index");
    return s;
}

std::array<std::int64_t, 3> LatticeSpec::unflatten(std::int64_t idx) const {
    const std::int64_t V = sites_per_dim();
    std::array<std::int64_t, 3> t{0, 0, 0};
    for (int i = d - 1; i >= 0; --i) {
        t[i] = idx % V - halfsites();
        idx /= V;
    }
    return t;
}

std::int64_t LatticeSpec::flatten(const std::array<std::int64_t, 3>& t) const {
    const std::int64_t V = sites_per_dim();
    std::int64_t idx = 0;
    for (int i = 0; i < d; ++i) {
        std::int64_t c = (t[i] + halfsites()) % V;
        if (c < 0) c += V;
        idx = idx * V + c;
    }
    return idx;
}

double LatticeSpec::momentum_component(std::int64_t j) const {
    return M_PI * static_cast<double>(j) / L();
}

bool LatticeSpec::compatible_torus(const LatticeSpec& other) const {
    return d == other.d && eps0 == other.eps0 && L0 == other.L0;
}

LatticeSpec make_lattice(int d, double eps0, std::int64_t L0, int N) {
    if (d < 1 || d > 3) throw ValidationError("lattice: d must be 1..3");
    if (eps0 <= 0.0) throw ValidationError("lattice: eps0 must be positive");
    if (L0 < 1) throw ValidationError("lattice: L0 must be a positive integer");
    if (N < 0) throw ValidationError("lattice: N must be >= 0");
    return LatticeSpec{d, eps0, L0, N};
}

double mass_parameter(const LatticeSpec& spec, double m) {
    if (m <= 0.0)
        throw ValidationError("mass_parameter: m must be positive (massless needs the "
                              "explicit zero-mode exclusion flag)");
    const double eps = spec.eps();
    return std::sqrt(2.0 * spec.d + eps * eps * m * m);
}

HarmonicModel trajectory_model(const LatticeSpec& spec, double m) {
    const double mu = mass_parameter(spec, m);
    return HarmonicModel{spec, mu * mu, false};
}

HarmonicModel fixed_mu_model(const LatticeSpec& spec, double mu, bool exclude_zero_mode) {
    const double mu2 = mu * mu;
    const double floor = 2.0 * spec.d;
    if (mu2 < floor * (1.0 - 1e-12))
        throw ValidationError("harmonic model: mu^2 < 2d is unstable");
    if (mu2 <= floor * (1.0 + 1e-12)) {
        if (!exclude_zero_mode)
            throw ValidationError("harmonic model: massless point needs zero-mode exclusion");
        return HarmonicModel{spec, floor, true};  // snap to the massless point
    }
    return HarmonicModel{spec, mu2, exclude_zero_mode};
}

double dispersion(const HarmonicModel& model, const double* k) {
    const double eps = model.spec.eps();
    const int d = model.spec.d;
    if (model.mu2 < 2.0 * d) throw ValidationError("dispersion: mu^2 < 2d is unstable");
    double g2 = (model.mu2 - 2.0 * d) / (eps * eps);
    for (int i = 0; i < d; ++i) {
        const double s = std::sin(0.5 * eps * k[i]);
        g2 += 4.0 / (eps * eps) * s * s;
    }
    return std::sqrt(std::max(g2, 0.0));
}

double dispersion(const HarmonicModel& model, double k1) { return dispersion(model, &k1); }

double continuum_dispersion(double m, const double* k, int d) {
    double g2 = m * m;
    for (int i = 0; i < d; ++i) g2 += k[i] * k[i];
    return std::sqrt(g2);
}

std::vector<double> dispersion_table(const HarmonicModel& model) {
    const LatticeSpec& spec = model.spec;
    std::vector<double> out(spec.volume());
    for (std::int64_t idx = 0; idx < spec.volume(); ++idx) {
        const auto t = spec.unflatten(idx);
        double k[3] = {0, 0, 0};
        for (int i = 0; i < spec.d; ++i) k[i] = spec.momentum_component(t[i]);
        out[idx] = dispersion(model, k);
    }
    return out;
}

}  // namespace latscale
