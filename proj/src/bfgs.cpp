#include "chebmotion/optimize.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

// BFGS with an inexact line search satisfying the strong Wolfe conditions
// (bracket + zoom with quadratic/bisection interpolation) and
// central-difference gradients. The inverse Hessian estimate is kept dense;
// the design vectors here have at most a handful of entries.

namespace chebmotion {
namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double inf_norm(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Vec gradient(const RmsObjective& f, const Vec& o, double step) {
    Vec g(o.size());
    Vec probe = o;
    for (std::size_t i = 0; i < o.size(); ++i) {
        const double h = step * std::max(1.0, std::abs(o[i]));
        probe[i] = o[i] + h;
        const double fp = f(probe);
        probe[i] = o[i] - h;
        const double fm = f(probe);
        probe[i] = o[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

struct LineSearchResult {
    double alpha = 0.0;
    double f = 0.0;
    bool ok = false;
};

// Strong Wolfe line search on g(a) = f(o + a d). Directional derivatives
// come from finite differences along d, one extra evaluation each.
LineSearchResult line_search(const RmsObjective& f, const Vec& o, const Vec& d, double f0,
                             double g0) {
    constexpr double c1 = 1e-4;
    constexpr double c2 = 0.9;
    constexpr int max_iters = 60;

    const auto eval = [&](double alpha) {
        Vec p(o.size());
        for (std::size_t i = 0; i < o.size(); ++i) p[i] = o[i] + alpha * d[i];
        return f(p);
    };
    const auto slope = [&](double alpha, double f_alpha) {
        const double h = 1e-7 * std::max(1.0, std::abs(alpha));
        return (eval(alpha + h) - f_alpha) / h;
    };

    const auto zoom = [&](double lo, double f_lo, double hi) -> LineSearchResult {
        for (int i = 0; i < max_iters; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = eval(mid);
            if (f_mid > f0 + c1 * mid * g0 || f_mid >= f_lo) {
                hi = mid;
            } else {
                const double g_mid = slope(mid, f_mid);
                if (std::abs(g_mid) <= -c2 * g0) return {mid, f_mid, true};
                if (g_mid * (hi - lo) >= 0.0) hi = lo;
                lo = mid;
                f_lo = f_mid;
            }
            if (std::abs(hi - lo) < 1e-14 * std::max(1.0, std::abs(lo)))
                return {lo, f_lo, f_lo < f0};
        }
        return {lo, f_lo, f_lo < f0};
    };

    double alpha_prev = 0.0;
    double f_prev = f0;
    double alpha = 1.0;
    for (int i = 0; i < max_iters; ++i) {
        const double f_alpha = eval(alpha);
        if (f_alpha > f0 + c1 * alpha * g0 || (i > 0 && f_alpha >= f_prev))
            return zoom(alpha_prev, f_prev, alpha);
        const double g_alpha = slope(alpha, f_alpha);
        if (std::abs(g_alpha) <= -c2 * g0) return {alpha, f_alpha, true};
        if (g_alpha >= 0.0) return zoom(alpha, f_alpha, alpha_prev);
        alpha_prev = alpha;
        f_prev = f_alpha;
        alpha *= 2.0;
    }
    return {alpha_prev, f_prev, f_prev < f0};
}

} // namespace

SolverResult solve_bfgs(const OptimizationContext& ctx, const BfgsOptions& options) {
    const auto t_start = std::chrono::steady_clock::now();
    const RmsObjective objective{ctx};
    const int dof = objective.dof();

    Vec o(static_cast<std::size_t>(dof), 0.0);
    double f = objective(o);
    const double f_reference = f;

    Vec best_o = o;
    double best_f = f;
    int iterations = 0;
    bool converged = (dof == 0);

    if (dof > 0) {
        // Inverse Hessian estimate, identity to start.
        std::vector<Vec> h(static_cast<std::size_t>(dof), Vec(static_cast<std::size_t>(dof), 0.0));
        for (int i = 0; i < dof; ++i) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;

        Vec g = gradient(objective, o, options.fd_step);
        int stall = 0;
        bool first_update = true;

        for (iterations = 0; iterations < options.max_iterations; ++iterations) {
            if (inf_norm(g) < options.gradient_tol * std::max(1.0, std::abs(f))) {
                converged = true;
                break;
            }

            Vec d(static_cast<std::size_t>(dof), 0.0);
            for (int i = 0; i < dof; ++i)
                for (int j = 0; j < dof; ++j)
                    d[static_cast<std::size_t>(i)] -=
                        h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                        g[static_cast<std::size_t>(j)];
            double g0 = dot(g, d);
            if (g0 >= 0.0) {
                // Not a descent direction; reset the estimate.
                for (auto& row : h) std::fill(row.begin(), row.end(), 0.0);
                for (int i = 0; i < dof; ++i) {
                    h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
                    d[static_cast<std::size_t>(i)] = -g[static_cast<std::size_t>(i)];
                }
                g0 = dot(g, d);
                if (g0 >= 0.0) break;
            }

            const LineSearchResult ls = line_search(objective, o, d, f, g0);
            if (!ls.ok || ls.alpha == 0.0) break;

            Vec o_new(o.size());
            for (std::size_t i = 0; i < o.size(); ++i) o_new[i] = o[i] + ls.alpha * d[i];
            const Vec g_new = gradient(objective, o_new, options.fd_step);

            Vec s(o.size()), y(o.size());
            for (std::size_t i = 0; i < o.size(); ++i) {
                s[i] = o_new[i] - o[i];
                y[i] = g_new[i] - g[i];
            }
            const double sy = dot(s, y);
            if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
                if (first_update) {
                    const double scale = sy / dot(y, y);
                    for (int i = 0; i < dof; ++i)
                        h[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = scale;
                    first_update = false;
                }
                // BFGS inverse update: H <- (I - r s y^T) H (I - r y s^T) + r s s^T
                const double rho = 1.0 / sy;
                Vec hy(static_cast<std::size_t>(dof), 0.0);
                for (int i = 0; i < dof; ++i)
                    for (int j = 0; j < dof; ++j)
                        hy[static_cast<std::size_t>(i)] +=
                            h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                            y[static_cast<std::size_t>(j)];
                const double yhy = dot(y, hy);
                for (int i = 0; i < dof; ++i) {
                    for (int j = 0; j < dof; ++j) {
                        h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                            rho * rho * (yhy + sy) * s[static_cast<std::size_t>(i)] *
                                s[static_cast<std::size_t>(j)] -
                            rho * (hy[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)] +
                                   s[static_cast<std::size_t>(i)] * hy[static_cast<std::size_t>(j)]);
                    }
                }
            }

            const double decrease = (f - ls.f) / std::max(1.0, std::abs(f));
            o = std::move(o_new);
            g = g_new;
            f = ls.f;
            if (f < best_f) {
                best_f = f;
                best_o = o;
            }

            if (decrease < options.stall_tol) {
                if (++stall >= options.stall_iterations) {
                    converged = true;
                    ++iterations;
                    break;
                }
            } else {
                stall = 0;
            }
        }
    }

    // Descent guarantee relative to the o = 0 reference.
    if (best_f > f_reference) {
        best_f = f_reference;
        std::fill(best_o.begin(), best_o.end(), 0.0);
    }

    SolverResult result{best_o,
                        eliminate_constraints(best_o, ctx.task),
                        best_f,
                        iterations,
                        objective.evaluations(),
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                            .count(),
                        SolverId::bfgs,
                        converged};
    return result;
}

} // namespace chebmotion
