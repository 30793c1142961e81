#if defined(__aarch64__)

#include "chebmotion/kernels.hpp"

#include <arm_neon.h>

// Two x-lanes per vector. NEON is baseline on aarch64, so no runtime
// capability check is needed.

namespace chebmotion::kernels {
namespace {

void clenshaw_neon(const double* coeffs, std::size_t n_coeffs, const double* x, std::size_t n,
                   double* out) {
    if (n_coeffs == 0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
    }
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t xi = vld1q_f64(x + i);
        const float64x2_t two_x = vaddq_f64(xi, xi);
        float64x2_t b1 = vdupq_n_f64(0.0);
        float64x2_t b2 = vdupq_n_f64(0.0);
        for (std::size_t k = n_coeffs - 1; k >= 1; --k) {
            const float64x2_t ck = vdupq_n_f64(coeffs[k]);
            const float64x2_t b0 = vfmaq_f64(vsubq_f64(ck, b2), two_x, b1);
            b2 = b1;
            b1 = b0;
        }
        const float64x2_t c0 = vdupq_n_f64(coeffs[0]);
        vst1q_f64(out + i, vfmaq_f64(vsubq_f64(c0, b2), xi, b1));
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

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_sumsq_neon(const double* w, const double* v, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t vi = vld1q_f64(v + i);
        acc = vfmaq_f64(acc, vmulq_f64(vld1q_f64(w + i), vi), vi);
    }
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += w[i] * v[i] * v[i];
    return s;
}

} // namespace

const Ops& neon() {
    static const Ops ops{"neon", clenshaw_neon, axpy_neon, dot_neon, weighted_sumsq_neon};
    return ops;
}

} // namespace chebmotion::kernels

#endif // aarch64
