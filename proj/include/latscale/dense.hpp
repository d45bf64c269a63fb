#pragma once

#include <cstdint>
#include <vector>

#include "latscale/kernels.hpp"

namespace latscale {

// Minimal row-major dense matrix for oracle paths and layer checks.
struct Dense {
    std::int64_t rows = 0, cols = 0;
    std::vector<double> a;

    Dense() = default;
    Dense(std::int64_t r, std::int64_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::int64_t r, std::int64_t c) { return a[r * cols + c]; }
    double operator()(std::int64_t r, std::int64_t c) const { return a[r * cols + c]; }
    const double* row(std::int64_t r) const { return a.data() + r * cols; }
    double* row(std::int64_t r) { return a.data() + r * cols; }
};

inline Dense matmul(const Dense& x, const Dense& y) {
    Dense yt(y.cols, y.rows);
    for (std::int64_t r = 0; r < y.rows; ++r)
        for (std::int64_t c = 0; c < y.cols; ++c) yt(c, r) = y(r, c);
    Dense out(x.rows, y.cols);
    for (std::int64_t r = 0; r < x.rows; ++r)
        for (std::int64_t c = 0; c < y.cols; ++c)
            out(r, c) = kernels::dot(x.row(r), yt.row(c), x.cols);
    return out;
}

// x * y^T
inline Dense matmul_bt(const Dense& x, const Dense& y) {
    Dense out(x.rows, y.rows);
    for (std::int64_t r = 0; r < x.rows; ++r)
        for (std::int64_t c = 0; c < y.rows; ++c)
            out(r, c) = kernels::dot(x.row(r), y.row(c), x.cols);
    return out;
}

inline double identity_residual(const Dense& m) {
    double worst = 0.0;
    for (std::int64_t r = 0; r < m.rows; ++r)
        for (std::int64_t c = 0; c < m.cols; ++c) {
            const double target = (r == c) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(m(r, c) - target));
        }
    return worst;
}

inline double max_abs_diff(const Dense& x, const Dense& y) {
    return kernels::max_abs_diff(x.a.data(), y.a.data(), x.a.size());
}

}  // namespace latscale
