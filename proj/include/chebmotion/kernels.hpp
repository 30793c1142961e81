#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Batch arithmetic kernels behind the hot loops (series evaluation at
// quadrature nodes, weighted accumulation). A scalar reference version is
// always present; on x86-64 an AVX2+FMA variant and on aarch64 a NEON
// variant are compiled in and selected at runtime. All variants implement
// the same recurrences in the same per-lane order, so they agree to
// rounding noise; the equivalence suite pins that down.

namespace chebmotion::kernels {

struct Ops {
    const char* name;

    // out[i] = sum_k coeffs[k] * T_k(x[i]) via the Clenshaw recurrence.
    // No domain check: callers own the |x| <= 1 contract (property models
    // deliberately extrapolate slightly past the fit interval).
    void (*clenshaw)(const double* coeffs, std::size_t n_coeffs, const double* x, std::size_t n,
                     double* out);

    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);

    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);

    // sum_i w[i] * v[i]^2
    double (*weighted_sumsq)(const double* w, const double* v, std::size_t n);
};

// Reference implementation, always available.
const Ops& scalar();

#if defined(__x86_64__) || defined(_M_X64)
// Compiled with -mavx2 -mfma; call only when cpu_supports_avx2() is true.
const Ops& avx2();
bool cpu_supports_avx2();
#endif

#if defined(__aarch64__)
const Ops& neon();
#endif

// Variants usable on this CPU, best first.
std::vector<std::string> available();

// The selected variant. Defaults to the best available; the environment
// variable CHEBMOTION_KERNEL ("scalar", "avx2", "neon") overrides.
const Ops& active();

// Force a variant by name. Returns false (and leaves the selection alone)
// if the name is unknown or unsupported on this CPU.
bool select(std::string_view name);

} // namespace chebmotion::kernels
