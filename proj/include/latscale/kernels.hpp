#pragma once

// Data-parallel inner-loop kernels: scalar reference implementations plus
// AVX2/FMA variants selected at runtime.  Every routine has a fixed
// summation order per backend, so results are reproducible run-to-run on
// the same machine; scalar and SIMD variants agree to rounding and are
// equivalence-tested against each other.
//
// All hot loops in the library (momentum mode sums, Brillouin-zone folds,
// symbol quadrature, covariance pullbacks) funnel through this set.

#include <cstddef>

namespace latscale::kernels {

enum class Backend { scalar, avx2 };

// Currently active backend.  Resolved once from CPUID at first use; the
// LATSCALE_KERNELS environment variable ("scalar"/"avx2") or force() can
// override it (used by the equivalence tests and the CLI --kernels flag).
Backend active();
void force(Backend b);
const char* name(Backend b);

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i a[i]*b[i]*c[i]
double dot3(const double* a, const double* b, const double* c, std::size_t n);

// sum_i a[i]
double sum(const double* a, std::size_t n);

// dst[i] += src[i]
void add(double* dst, const double* src, std::size_t n);

// y[i] += alpha*x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

// out[i] = a[i]*b[i]
void mul(double* out, const double* a, const double* b, std::size_t n);

// out[i] = a[i]*b[i]*c[i]
void mul3(double* out, const double* a, const double* b, const double* c, std::size_t n);

// out[i] = alpha*num[i]/den[i]
void div_scaled(double* out, double alpha, const double* num, const double* den, std::size_t n);

// max_i |a[i]|
double max_abs(const double* a, std::size_t n);

// max_i |a[i]-b[i]|
double max_abs_diff(const double* a, const double* b, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
double sum(const double* a, std::size_t n);
void add(double* dst, const double* src, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void mul(double* out, const double* a, const double* b, std::size_t n);
void mul3(double* out, const double* a, const double* b, const double* c, std::size_t n);
void div_scaled(double* out, double alpha, const double* num, const double* den, std::size_t n);
double max_abs(const double* a, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace scalar

#ifdef LATSCALE_HAVE_AVX2
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double dot3(const double* a, const double* b, const double* c, std::size_t n);
double sum(const double* a, std::size_t n);
void add(double* dst, const double* src, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void mul(double* out, const double* a, const double* b, std::size_t n);
void mul3(double* out, const double* a, const double* b, const double* c, std::size_t n);
void div_scaled(double* out, double alpha, const double* num, const double* den, std::size_t n);
double max_abs(const double* a, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#endif

}  // namespace latscale::kernels
