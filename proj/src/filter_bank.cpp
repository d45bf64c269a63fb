#include "latscale/filter_bank.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include "latscale/errors.hpp"

namespace latscale {

namespace {

using longd = long double;
using clongd = std::complex<longd>;

// Durand-Kerner on a monic polynomial given by ascending coefficients.
std::vector<clongd> all_roots(std::vector<longd> coeff) {
    const std::size_t deg = coeff.size() - 1;
    for (auto& c : coeff) c /= coeff[deg];
    std::vector<clongd> r(deg);
    // deterministic non-real starting points
    const clongd seed(0.4L, 0.9L);
    clongd p(1.0L, 0.0L);
    for (std::size_t i = 0; i < deg; ++i) {
        p *= seed;
        r[i] = p;
    }
    auto eval = [&](clongd z) {
        clongd v = 0.0L;
        for (std::size_t i = coeff.size(); i-- > 0;) v = v * z + coeff[i];
        return v;
    };
    for (int it = 0; it < 400; ++it) {
        longd worst = 0.0L;
        for (std::size_t i = 0; i < deg; ++i) {
            clongd num = eval(r[i]);
            clongd den(1.0L, 0.0L);
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) den *= (r[i] - r[j]);
            clongd step = num / den;
            r[i] -= step;
            worst = std::max(worst, std::abs(step));
        }
        if (worst < 1e-20L) break;
    }
    // Newton polish to 1e-14 and beyond (spec: polish to 1e-14)
    std::vector<longd> dcoeff(deg);
    for (std::size_t i = 1; i <= deg; ++i) dcoeff[i - 1] = coeff[i] * static_cast<longd>(i);
    auto deval = [&](clongd z) {
        clongd v = 0.0L;
        for (std::size_t i = dcoeff.size(); i-- > 0;) v = v * z + dcoeff[i];
        return v;
    };
    for (auto& root : r)
        for (int it = 0; it < 80; ++it) {
            clongd step = eval(root) / deval(root);
            root -= step;
            if (std::abs(step) < 1e-19L) break;
        }
    return r;
}

double residual_pair(const std::vector<double>& a, const std::vector<double>& b, bool unit_at_zero) {
    const int n = static_cast<int>(a.size());
    double worst = 0.0;
    for (int m = 0; 2 * m < n; ++m) {
        double s = 0.0;
        for (int i = 0; i + 2 * m < n; ++i) s += a[i + 2 * m] * b[i];
        double target = (m == 0 && unit_at_zero) ? 1.0 : 0.0;
        worst = std::max(worst, std::fabs(s - target));
    }
    return worst;
}

}  // namespace

double sum_residual(const FilterBank& bank) {
    double s = 0.0;
    for (double v : bank.h) s += v;
    return std::fabs(s - std::sqrt(2.0));
}

double qmf_residual(const FilterBank& bank) { return residual_pair(bank.h, bank.h, true); }

double duality_residual(const FilterBank& bank) {
    const int n = static_cast<int>(bank.h.size());
    double worst = residual_pair(bank.g, bank.g, true);
    for (int m = -(n / 2); 2 * m < n; ++m) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            int j = i + 2 * m;
            if (j >= 0 && j < n) s += bank.g[i] * bank.h[j];
        }
        worst = std::max(worst, std::fabs(s));
    }
    return worst;
}

double moment_residual(const FilterBank& bank) {
    const int n = static_cast<int>(bank.h.size());
    const double scale = n - 1;
    double worst = 0.0;
    for (int p = 0; p < bank.K; ++p) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double sign = (i % 2 == 0) ? 1.0 : -1.0;
            s += sign * std::pow(i / scale, p) * bank.h[i];
        }
        worst = std::max(worst, std::fabs(s));
    }
    return worst;
}

double worst_invariant_residual(const FilterBank& bank) {
    return std::max({sum_residual(bank), qmf_residual(bank), duality_residual(bank),
                     moment_residual(bank)});
}

FilterBank daubechies_filter(int K) {
    if (K < 1 || K > 10)
        throw ValidationError("daubechies_filter: unsupported family K=" + std::to_string(K) +
                              " (supported 1..10)");

    std::vector<longd> m0(1, 1.0L);  // coefficients of m0's polynomial part, ascending in z
    if (K > 1) {
        // Daubechies polynomial P_K(y) = sum_{j<K} C(K-1+j, j) y^j, substituted
        // with y = (2 - z - 1/z)/4 and cleared to z^{K-1} P(y(z)).
        std::vector<longd> poly(2 * K - 1, 0.0L);
        std::vector<longd> cur(1, 1.0L);  // centered Laurent coeffs of y^j
        const int mid = K - 1;
        longd binom = 1.0L;
        for (int j = 0; j < K; ++j) {
            const int half = (static_cast<int>(cur.size()) - 1) / 2;
            for (int i = -half; i <= half; ++i) poly[mid + i] += binom * cur[half + i];
            // cur *= (2 - z - 1/z)/4
            std::vector<longd> next(cur.size() + 2, 0.0L);
            for (std::size_t i = 0; i < cur.size(); ++i) {
                next[i] += cur[i] * (-0.25L);
                next[i + 1] += cur[i] * 0.5L;
                next[i + 2] += cur[i] * (-0.25L);
            }
            cur.swap(next);
            binom = binom * static_cast<longd>(K + j) / static_cast<longd>(j + 1);
        }
        auto roots = all_roots(poly);
        // spectral factorization: keep roots inside the unit circle
        std::vector<clongd> q(1, clongd(1.0L, 0.0L));
        for (const auto& r : roots) {
            if (std::abs(r) >= 1.0L) continue;
            std::vector<clongd> next(q.size() + 1, clongd(0.0L, 0.0L));
            for (std::size_t i = 0; i < q.size(); ++i) {
                next[i + 1] += q[i];
                next[i] += q[i] * (-r);
            }
            q.swap(next);
        }
        m0.assign(q.size(), 0.0L);
        longd qsum = 0.0L;
        for (std::size_t i = 0; i < q.size(); ++i) qsum += q[i].real();
        for (std::size_t i = 0; i < q.size(); ++i) m0[i] = q[i].real() / qsum;  // Q(1) = 1
    }

    // multiply by ((1+z)/2)^K
    for (int j = 0; j < K; ++j) {
        std::vector<longd> next(m0.size() + 1, 0.0L);
        for (std::size_t i = 0; i < m0.size(); ++i) {
            next[i] += 0.5L * m0[i];
            next[i + 1] += 0.5L * m0[i];
        }
        m0.swap(next);
    }

    FilterBank bank;
    bank.K = K;
    bank.h.resize(m0.size());
    const longd rt2 = std::sqrt(2.0L);
    for (std::size_t i = 0; i < m0.size(); ++i) bank.h[i] = static_cast<double>(rt2 * m0[i]);

    // canonical extremal-phase ordering: energy concentrated at small n
    double fwd = 0.0, rev = 0.0;
    for (std::size_t i = 0; i < bank.h.size(); ++i) {
        fwd += bank.h[i] * bank.h[i] * static_cast<double>(i);
        rev += bank.h[i] * bank.h[i] * static_cast<double>(bank.h.size() - 1 - i);
    }
    if (fwd > rev) std::reverse(bank.h.begin(), bank.h.end());

    bank.g = highpass_from_lowpass(bank.h);
    return bank;
}

std::vector<double> highpass_from_lowpass(const std::vector<double>& h) {
    if (h.size() < 2 || h.size() % 2 != 0)
        throw InvariantError("highpass_from_lowpass: tap count must be even and >= 2");
    FilterBank probe;
    probe.K = static_cast<int>(h.size()) / 2;
    probe.h = h;
    double s = 0.0;
    for (double v : h) s += v;
    if (std::fabs(s - std::sqrt(2.0)) > 1e-10 || residual_pair(h, h, true) > 1e-10)
        throw InvariantError("highpass_from_lowpass: h is not an orthonormal low-pass filter");
    std::vector<double> g(h.size());
    const int n = static_cast<int>(h.size());
    for (int i = 0; i < n; ++i) {
        double sign = (i % 2 == 0) ? 1.0 : -1.0;
        g[i] = sign * h[n - 1 - i];
    }
    return g;
}

}  // namespace latscale
