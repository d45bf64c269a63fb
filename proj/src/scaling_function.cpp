#include "latscale/scaling_function.hpp"

#include <algorithm>
#include <cmath>

#include "latscale/errors.hpp"
#include "latscale/kernels.hpp"

namespace latscale {

namespace {
constexpr double kThetaStop = 1e-8;  // product truncation: |k| 2^-jmax below this
}

ScalingSamples cascade_evaluate(const FilterBank& bank, int J, double tol_fail) {
    if (J < 1) throw ValidationError("cascade_evaluate: J must be >= 1");
    const int support = bank.support_length();
    const std::int64_t grid = (static_cast<std::int64_t>(support) << J) + 1;
    const std::int64_t one = std::int64_t(1) << J;

    ScalingSamples out;
    out.K = bank.K;
    out.J = J;
    out.values.assign(grid, 0.0);
    for (std::int64_t p = 0; p < std::min(one, grid); ++p) out.values[p] = 1.0;  // Haar start

    const double rt2 = std::sqrt(2.0);
    std::vector<double> next(grid);
    double diff = 0.0;
    for (int it = 0; it < 200; ++it) {
        for (std::int64_t p = 0; p < grid; ++p) {
            double acc = 0.0;
            for (std::size_t n = 0; n < bank.h.size(); ++n) {
                const std::int64_t q = 2 * p - static_cast<std::int64_t>(n) * one;
                if (q >= 0 && q < grid) acc += bank.h[n] * out.values[q];
            }
            next[p] = rt2 * acc;
        }
        diff = kernels::max_abs_diff(next.data(), out.values.data(), grid);
        out.values.swap(next);
        out.iterations = it + 1;
        if (diff < 1e-10) break;
    }
    out.residual = diff;
    if (out.residual > tol_fail)
        throw InvariantError("cascade_evaluate: no convergence, residual " +
                             std::to_string(out.residual));
    return out;
}

std::complex<double> m0(const FilterBank& bank, double theta) {
    const std::complex<double> z = std::polar(1.0, -theta);
    std::complex<double> acc = bank.h.back();
    for (std::size_t i = bank.h.size() - 1; i-- > 0;) acc = acc * z + bank.h[i];
    return acc / std::sqrt(2.0);
}

std::complex<double> fourier_scaling(const FilterBank& bank, double k) {
    if (k == 0.0) return 1.0;
    const double ak = std::fabs(k);
    int jmax = 1;
    while (ak * std::pow(2.0, -jmax) >= kThetaStop && jmax < 60) ++jmax;
    std::complex<double> prod = 1.0;
    double theta = k;
    for (int j = 0; j < jmax; ++j) {
        theta *= 0.5;
        prod *= m0(bank, theta);
    }
    return prod;
}

std::vector<double> symbol_sq_grid(const FilterBank& bank, double step, std::size_t n) {
    std::vector<double> out(n);
    if (n == 0) return out;
    out[0] = 1.0;
    auto m0sq = [&](double theta) { return std::norm(m0(bank, theta)); };
    for (std::size_t j = 1; j < n; ++j) {
        const double theta = step * static_cast<double>(j);
        if (j % 2 == 0) {
            out[j] = m0sq(0.5 * theta) * out[j / 2];
        } else {
            // |.|^2 is phase-insensitive: a looser stop suffices here
            int jmax = 1;
            while (theta * std::pow(2.0, -jmax) >= 1e-5 && jmax < 60) ++jmax;
            double prod = 1.0, th = theta;
            for (int l = 0; l < jmax; ++l) {
                th *= 0.5;
                prod *= m0sq(th);
            }
            out[j] = prod;
        }
    }
    return out;
}

std::vector<std::complex<double>> symbol_grid(const FilterBank& bank, double step,
                                              std::size_t n) {
    std::vector<std::complex<double>> out(n);
    if (n == 0) return out;
    out[0] = 1.0;
    for (std::size_t j = 1; j < n; ++j) {
        if (j % 2 == 0)
            out[j] = m0(bank, 0.5 * step * static_cast<double>(j)) * out[j / 2];
        else
            out[j] = fourier_scaling(bank, step * static_cast<double>(j));
    }
    return out;
}

double symbol_decay_exponent(const FilterBank& bank) {
    // envelope max over dyadic shells [2^a pi, 2^{a+1} pi), slope of log-max
    std::vector<double> lx, ly;
    const double golden = 0.6180339887498949;
    for (int a = 3; a <= 13; ++a) {
        const double lo = M_PI * std::pow(2.0, a);
        double mx = 0.0;
        for (int i = 0; i < 64; ++i) {
            // low-discrepancy offsets: rational grids land on symbol zeros
            const double frac = std::fmod(static_cast<double>(i + 1) * golden, 1.0);
            const double k = lo * (1.0 + frac);
            mx = std::max(mx, std::abs(fourier_scaling(bank, k)));
        }
        lx.push_back(std::log1p(lo));
        ly.push_back(std::log(std::max(mx, 1e-300)));
    }
    const std::size_t n = lx.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

std::vector<double> sobolev_halforder_diagnostic(const FilterBank& bank,
                                                 const std::vector<double>& cutoffs) {
    if (cutoffs.empty()) return {};
    for (std::size_t i = 1; i < cutoffs.size(); ++i)
        if (cutoffs[i] <= cutoffs[i - 1])
            throw ValidationError("sobolev diagnostic: cutoffs must increase");
    const double cut_max = cutoffs.back();
    const double step = 2.0 * M_PI / 48.0;

    // grid sized so every cutoff lands on an even Simpson index
    std::vector<std::size_t> cut_idx;
    for (double c : cutoffs) {
        std::size_t idx = static_cast<std::size_t>(std::ceil(c / step / 2.0)) * 2;
        cut_idx.push_back(idx);
    }
    const std::size_t n = cut_idx.back() + 1;
    std::vector<double> S = symbol_sq_grid(bank, step, n);
    for (std::size_t j = 0; j < n; ++j) S[j] *= (1.0 + step * static_cast<double>(j));

    std::vector<double> out;
    for (std::size_t ci = 0; ci < cutoffs.size(); ++ci) {
        const std::size_t m = cut_idx[ci];
        double odd = 0.0, even = 0.0;
        for (std::size_t j = 1; j < m; j += 2) odd += S[j];
        for (std::size_t j = 2; j < m; j += 2) even += S[j];
        // factor 2: even integrand over [-cut, cut]
        out.push_back(2.0 * step / 3.0 * (S[0] + S[m] + 4.0 * odd + 2.0 * even));
    }
    (void)cut_max;
    return out;
}

std::complex<double> periodized_symbol(const FilterBank& bank, const LatticeSpec& spec,
                                       const double* x, const std::int64_t* j) {
    const double eps = spec.eps();
    std::complex<double> out = std::pow(eps, 0.5 * spec.d);
    for (int i = 0; i < spec.d; ++i) {
        const double k = spec.momentum_component(j[i]);
        out *= fourier_scaling(bank, eps * k) * std::polar(1.0, -k * x[i]);
    }
    return out;
}

}  // namespace latscale
