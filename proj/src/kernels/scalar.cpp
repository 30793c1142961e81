#include "chebmotion/kernels.hpp"

namespace chebmotion::kernels {
namespace {

void clenshaw_scalar(const double* coeffs, std::size_t n_coeffs, const double* x, std::size_t n,
                     double* out) {
    if (n_coeffs == 0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double two_x = 2.0 * xi;
        double b1 = 0.0; // b_{k+1}
        double b2 = 0.0; // b_{k+2}
        for (std::size_t k = n_coeffs - 1; k >= 1; --k) {
            const double b0 = coeffs[k] + two_x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        out[i] = coeffs[0] + xi * b1 - b2;
    }
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_sumsq_scalar(const double* w, const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i] * v[i];
    return s;
}

} // namespace

const Ops& scalar() {
    static const Ops ops{"scalar", clenshaw_scalar, axpy_scalar, dot_scalar, weighted_sumsq_scalar};
    return ops;
}

} // namespace chebmotion::kernels
