#if defined(__x86_64__) || defined(_M_X64)

#include "chebmotion/kernels.hpp"

#include <immintrin.h>

// Four x-lanes per vector; the Clenshaw recurrence runs over coefficients
// while the lanes stay independent, so vectorizing across evaluation points
// needs no shuffles at all.

namespace chebmotion::kernels {
namespace {

void clenshaw_avx2(const double* coeffs, std::size_t n_coeffs, const double* x, std::size_t n,
                   double* out) {
    if (n_coeffs == 0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
    }
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d two_x = _mm256_add_pd(xi, xi);
        __m256d b1 = _mm256_setzero_pd();
        __m256d b2 = _mm256_setzero_pd();
        for (std::size_t k = n_coeffs - 1; k >= 1; --k) {
            const __m256d ck = _mm256_set1_pd(coeffs[k]);
            const __m256d b0 = _mm256_fmadd_pd(two_x, b1, _mm256_sub_pd(ck, b2));
            b2 = b1;
            b1 = b0;
        }
        const __m256d c0 = _mm256_set1_pd(coeffs[0]);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(xi, b1, _mm256_sub_pd(c0, b2)));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double two_x = 2.0 * xi;
        double b1 = 0.0, b2 = 0.0;
        for (std::size_t k = n_coeffs - 1; k >= 1; --k) {
            const double b0 = coeffs[k] + two_x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        out[i] = coeffs[0] + xi * b1 - b2;
    }
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d yi = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yi));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_sumsq_avx2(const double* w, const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vi = _mm256_loadu_pd(v + i);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), vi), vi, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * v[i] * v[i];
    return s;
}

} // namespace

const Ops& avx2() {
    static const Ops ops{"avx2", clenshaw_avx2, axpy_avx2, dot_avx2, weighted_sumsq_avx2};
    return ops;
}

bool cpu_supports_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

} // namespace chebmotion::kernels

#endif // x86-64
