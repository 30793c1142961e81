#include "chebmotion/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace chebmotion {
namespace {

struct LuFactors {
    Matrix lu;
    std::vector<std::size_t> perm;
};

LuFactors lu_factor(Matrix a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) throw std::runtime_error("linear solve: zero matrix");

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                piv = i;
            }
        }
        if (best < 1e-14 * scale) throw std::runtime_error("linear solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(perm[k], perm[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) / a(k, k);
            a(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
        }
    }
    return {std::move(a), std::move(perm)};
}

std::vector<double> lu_solve(const LuFactors& f, std::span<const double> b) {
    const std::size_t n = f.lu.rows();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

} // namespace

std::vector<double> solve_linear(const Matrix& a, std::span<const double> b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw std::invalid_argument("linear solve: dimension mismatch");
    const std::size_t n = a.rows();
    const LuFactors f = lu_factor(a);
    std::vector<double> x = lu_solve(f, b);

    // Residual in long double, one refinement pass.
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double acc = b[i];
        for (std::size_t j = 0; j < n; ++j)
            acc -= static_cast<long double>(a(i, j)) * static_cast<long double>(x[j]);
        r[i] = static_cast<double>(acc);
    }
    const std::vector<double> dx = lu_solve(f, r);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    return x;
}

LeastSquaresFit least_squares(const Matrix& a, std::span<const double> b) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m < n) throw std::invalid_argument("least squares: fewer rows than columns");
    if (b.size() != m) throw std::invalid_argument("least squares: dimension mismatch");

    Matrix r = a;
    std::vector<double> rhs(b.begin(), b.end());

    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm = std::hypot(norm, r(i, k));
        if (norm == 0.0) throw std::runtime_error("least squares: rank-deficient system");
        const double alpha = (r(k, k) >= 0.0) ? -norm : norm;

        // Householder vector v, stored transiently; v_k = r_kk - alpha.
        std::vector<double> v(m - k);
        v[0] = r(k, k) - alpha;
        for (std::size_t i = k + 1; i < m; ++i) v[i - k] = r(i, k);
        const double vtv = alpha * alpha - 2.0 * alpha * r(k, k) + [&] {
            double s = 0.0;
            for (std::size_t i = k; i < m; ++i) s += r(i, k) * r(i, k);
            return s;
        }();
        if (vtv <= 0.0) throw std::runtime_error("least squares: rank-deficient system");

        r(k, k) = alpha;
        for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;

        for (std::size_t j = k + 1; j < n; ++j) {
            double dotv = v[0] * r(k, j);
            for (std::size_t i = k + 1; i < m; ++i) dotv += v[i - k] * r(i, j);
            const double f = 2.0 * dotv / vtv;
            r(k, j) -= f * v[0];
            for (std::size_t i = k + 1; i < m; ++i) r(i, j) -= f * v[i - k];
        }
        double dotv = v[0] * rhs[k];
        for (std::size_t i = k + 1; i < m; ++i) dotv += v[i - k] * rhs[i];
        const double f = 2.0 * dotv / vtv;
        rhs[k] -= f * v[0];
        for (std::size_t i = k + 1; i < m; ++i) rhs[i] -= f * v[i - k];
    }

    double rmax = 0.0;
    for (std::size_t k = 0; k < n; ++k) rmax = std::max(rmax, std::abs(r(k, k)));
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(r(k, k)) < 1e-13 * rmax)
            throw std::runtime_error("least squares: rank-deficient system");

    LeastSquaresFit fit;
    fit.x.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= r(i, j) * fit.x[j];
        fit.x[i] = s / r(i, i);
    }
    double res = 0.0;
    for (std::size_t i = n; i < m; ++i) res += rhs[i] * rhs[i];
    fit.residual_norm = std::sqrt(res);
    return fit;
}

} // namespace chebmotion
