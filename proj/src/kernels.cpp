#include "latscale/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace latscale::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i] * c[i];
    return acc;
}

double sum(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

void add(double* dst, const double* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void mul3(double* out, const double* a, const double* b, const double* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] * c[i];
}

void div_scaled(double* out, double alpha, const double* num, const double* den, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = alpha * num[i] / den[i];
}

double max_abs(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace scalar

namespace {

Backend detect() {
#ifdef LATSCALE_HAVE_AVX2
    if (const char* env = std::getenv("LATSCALE_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) return Backend::avx2;
    }
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Backend::avx2;
#endif
    return Backend::scalar;
}

Backend g_backend = detect();

}  // namespace

Backend active() { return g_backend; }

void force(Backend b) {
#ifndef LATSCALE_HAVE_AVX2
    b = Backend::scalar;
#endif
    g_backend = b;
}

const char* name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

#ifdef LATSCALE_HAVE_AVX2
#define LATSCALE_DISPATCH(fn, ...) \
    return g_backend == Backend::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define LATSCALE_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double dot(const double* a, const double* b, std::size_t n) { LATSCALE_DISPATCH(dot, a, b, n); }
double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    LATSCALE_DISPATCH(dot3, a, b, c, n);
}
double sum(const double* a, std::size_t n) { LATSCALE_DISPATCH(sum, a, n); }
void add(double* dst, const double* src, std::size_t n) { LATSCALE_DISPATCH(add, dst, src, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
    LATSCALE_DISPATCH(axpy, alpha, x, y, n);
}
void mul(double* out, const double* a, const double* b, std::size_t n) {
    LATSCALE_DISPATCH(mul, out, a, b, n);
}
void mul3(double* out, const double* a, const double* b, const double* c, std::size_t n) {
    LATSCALE_DISPATCH(mul3, out, a, b, c, n);
}
void div_scaled(double* out, double alpha, const double* num, const double* den, std::size_t n) {
    LATSCALE_DISPATCH(div_scaled, out, alpha, num, den, n);
}
double max_abs(const double* a, std::size_t n) { LATSCALE_DISPATCH(max_abs, a, n); }
double max_abs_diff(const double* a, const double* b, std::size_t n) {
    LATSCALE_DISPATCH(max_abs_diff, a, b, n);
}

#undef LATSCALE_DISPATCH

}  // namespace latscale::kernels
