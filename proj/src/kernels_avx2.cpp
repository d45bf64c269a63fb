// AVX2/FMA kernel variants.  Compiled with -mavx2 -mfma; only reached when
// CPUID reports both features.  Four-lane accumulators with an ordered lane
// combine keep results deterministic per backend.

#ifdef LATSCALE_HAVE_AVX2

#include <immintrin.h>

#include <cmath>

#include "latscale/kernels.hpp"

namespace latscale::kernels::avx2 {

namespace {
inline double hsum(__m256d v) {
    // ordered combine: (v0+v2) + (v1+v3)
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}
}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i] * c[i];
    return s;
}

double sum(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i];
    return s;
}

void add(double* dst, const double* src, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), _mm256_loadu_pd(src + i)));
    for (; i < n; ++i) dst[i] += src[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void mul3(double* out, const double* a, const double* b, const double* c, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(ab, _mm256_loadu_pd(c + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i] * c[i];
}

void div_scaled(double* out, double alpha, const double* num, const double* den, std::size_t n) {
    __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d q = _mm256_div_pd(_mm256_loadu_pd(num + i), _mm256_loadu_pd(den + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(av, q));
    }
    for (; i < n; ++i) out[i] = alpha * num[i] / den[i];
}

double max_abs(const double* a, std::size_t n) {
    const __m256d mask = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m = _mm256_max_pd(m, _mm256_andnot_pd(mask, _mm256_loadu_pd(a + i)));
    double lanes[4];
    _mm256_storeu_pd(lanes, m);
    double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) r = std::max(r, std::fabs(a[i]));
    return r;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    const __m256d mask = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        m = _mm256_max_pd(m, _mm256_andnot_pd(mask, d));
    }
    double lanes[4];
    _mm256_storeu_pd(lanes, m);
    double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) r = std::max(r, std::fabs(a[i] - b[i]));
    return r;
}

}  // namespace latscale::kernels::avx2

#endif  // LATSCALE_HAVE_AVX2
