#pragma once

#include <functional>
#include <span>
#include <vector>

namespace chebmotion {

// A series sum_i p_i T_i(x) on x in [-1, 1], stored by its coefficient
// vector p_0..p_n. Values are immutable after construction and safe to
// share across threads.
class ChebyshevSeries {
public:
    ChebyshevSeries() = default; // empty (identically zero) series
    explicit ChebyshevSeries(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const double> coeffs() const { return coeffs_; }

    // Clenshaw evaluation; |x| > 1 raises std::domain_error.
    double eval(double x) const;

    // Clenshaw without the domain check, for deliberate extrapolation a
    // little past [-1, 1] (property models evaluated on an overshooting
    // profile).
    double eval_unchecked(double x) const;

    // Batch evaluation through the active kernel. No domain check.
    void eval_batch(std::span<const double> x, std::span<double> out) const;

    // Coefficients of d/dx of this series, degree n-1.
    ChebyshevSeries derivative() const;

    // sum_i p_i T_i^(k)(end) from the closed-form endpoint values.
    double endpoint_value(int order, int end) const;

private:
    std::vector<double> coeffs_;
};

// T_i^(k)(+1) = prod_{j<k} (i^2 - j^2)/(2j+1), and
// T_i^(k)(-1) = (-1)^(i+k) T_i^(k)(+1). Orders 0..3 only (position through
// jerk); higher orders raise std::invalid_argument.
double endpoint_derivative(int basis_index, int order, int end);

// Chebyshev coefficients of sum_i a_i x^i.
ChebyshevSeries from_monomial(std::span<const double> monomial_coeffs);

// Design-space bounds for a profile with |phi(x)| <= 1 on [-1, 1]:
// b_0 = 1 and b_l = 4/pi for l >= 1.
std::vector<double> coefficient_bounds(int degree);

// Projection onto T_0..T_n by trapezoidal quadrature of
//   p_0 = (1/2pi) \oint phi(cos t) dt,
//   p_l = (1/pi)  \oint phi(cos t) cos(l t) dt
// over the full period with 8n+16 nodes. The integrand is periodic, so the
// trapezoid rule is spectrally accurate; inputs of degree <= n are
// recovered to rounding.
ChebyshevSeries project_profile(const std::function<double(double)>& profile, int degree);

} // namespace chebmotion
