#include "chebmotion/chebyshev.hpp"

#include "chebmotion/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chebmotion {

ChebyshevSeries::ChebyshevSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    for (double c : coeffs_)
        if (!std::isfinite(c))
            throw std::invalid_argument("ChebyshevSeries: non-finite coefficient");
}

double ChebyshevSeries::eval(double x) const {
    if (std::abs(x) > 1.0) throw std::domain_error("ChebyshevSeries::eval: |x| > 1");
    return eval_unchecked(x);
}

double ChebyshevSeries::eval_unchecked(double x) const {
    double out = 0.0;
    kernels::active().clenshaw(coeffs_.data(), coeffs_.size(), &x, 1, &out);
    return out;
}

void ChebyshevSeries::eval_batch(std::span<const double> x, std::span<double> out) const {
    if (x.size() != out.size())
        throw std::invalid_argument("ChebyshevSeries::eval_batch: size mismatch");
    kernels::active().clenshaw(coeffs_.data(), coeffs_.size(), x.data(), x.size(), out.data());
}

ChebyshevSeries ChebyshevSeries::derivative() const {
    const int n = degree();
    if (n <= 0) return ChebyshevSeries{};
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    // d_{k-1} = d_{k+1} + 2k c_k, downward, then halve d_0.
    for (int k = n; k >= 1; --k) {
        const double above = (k + 1 <= n - 1) ? d[static_cast<std::size_t>(k + 1)] : 0.0;
        d[static_cast<std::size_t>(k - 1)] = above + 2.0 * k * coeffs_[static_cast<std::size_t>(k)];
    }
    d[0] *= 0.5;
    return ChebyshevSeries{std::move(d)};
}

double ChebyshevSeries::endpoint_value(int order, int end) const {
    double s = 0.0;
    for (int i = 0; i <= degree(); ++i)
        s += coeffs_[static_cast<std::size_t>(i)] * endpoint_derivative(i, order, end);
    return s;
}

double endpoint_derivative(int basis_index, int order, int end) {
    if (basis_index < 0) throw std::invalid_argument("endpoint_derivative: negative basis index");
    if (order < 0 || order > 3)
        throw std::invalid_argument("endpoint_derivative: unsupported derivative order");
    if (end != 1 && end != -1) throw std::invalid_argument("endpoint_derivative: end must be +-1");

    const double i2 = static_cast<double>(basis_index) * basis_index;
    double v = 1.0;
    for (int j = 0; j < order; ++j) v *= (i2 - j * j) / (2.0 * j + 1.0);
    if (end == -1 && (basis_index + order) % 2 != 0) v = -v;
    return v;
}

namespace {

// Multiply a Chebyshev coefficient vector by x:
// x T_k = (T_{k+1} + T_{k-1})/2 for k >= 1, x T_0 = T_1.
std::vector<double> times_x(const std::vector<double>& c) {
    std::vector<double> out(c.size() + 1, 0.0);
    if (!c.empty()) out[1] += c[0];
    for (std::size_t k = 1; k < c.size(); ++k) {
        out[k + 1] += 0.5 * c[k];
        out[k - 1] += 0.5 * c[k];
    }
    return out;
}

} // namespace

ChebyshevSeries from_monomial(std::span<const double> monomial_coeffs) {
    if (monomial_coeffs.empty()) return ChebyshevSeries{};
    // Horner in the Chebyshev basis.
    std::vector<double> acc{monomial_coeffs.back()};
    for (std::size_t i = monomial_coeffs.size() - 1; i-- > 0;) {
        acc = times_x(acc);
        acc[0] += monomial_coeffs[i];
    }
    return ChebyshevSeries{std::move(acc)};
}

std::vector<double> coefficient_bounds(int degree) {
    if (degree < 0) throw std::invalid_argument("coefficient_bounds: negative degree");
    std::vector<double> b(static_cast<std::size_t>(degree) + 1, 4.0 / std::numbers::pi);
    b[0] = 1.0;
    return b;
}

ChebyshevSeries project_profile(const std::function<double(double)>& profile, int degree) {
    if (degree < 0) throw std::invalid_argument("project_profile: negative degree");
    const std::size_t n_nodes = 8 * static_cast<std::size_t>(degree) + 16;

    std::vector<double> f(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / n_nodes;
        f[j] = profile(std::cos(theta));
    }

    std::vector<double> p(static_cast<std::size_t>(degree) + 1, 0.0);
    for (std::size_t j = 0; j < n_nodes; ++j) p[0] += f[j];
    p[0] /= static_cast<double>(n_nodes);
    for (int l = 1; l <= degree; ++l) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_nodes; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / n_nodes;
            s += f[j] * std::cos(l * theta);
        }
        p[static_cast<std::size_t>(l)] = 2.0 * s / static_cast<double>(n_nodes);
    }
    return ChebyshevSeries{std::move(p)};
}

} // namespace chebmotion
