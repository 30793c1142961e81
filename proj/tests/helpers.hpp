#pragma once

#include "chebmotion/chebyshev.hpp"
#include "chebmotion/motion.hpp"
#include "chebmotion/plant.hpp"
#include "chebmotion/synthetic.hpp"

#include <cmath>
#include <random>
#include <vector>

// Test-side oracles, deliberately independent of the library's evaluation
// paths.

namespace testutil {

// Explicit T_k recurrence evaluation (the textbook definition), in long
// double. Valid for any real x, also outside [-1, 1].
inline long double eval_direct(std::span<const double> coeffs, long double x) {
    if (coeffs.empty()) return 0.0L;
    long double sum = coeffs[0];
    long double tkm1 = 1.0L, tk = x;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        sum += static_cast<long double>(coeffs[k]) * tk;
        const long double tkp1 = 2.0L * x * tk - tkm1;
        tkm1 = tk;
        tk = tkp1;
    }
    return sum;
}

// k-th derivative of the series at x by central finite differences of the
// direct recurrence, in long double. Five-point stencils; the third
// derivative stencil is second order, so it gets a smaller step.
inline long double fd_derivative(std::span<const double> coeffs, long double x, int order) {
    const auto f = [&](long double t) { return eval_direct(coeffs, t); };
    if (order == 0) return f(x);
    if (order == 1) {
        const long double h = 1e-3L;
        return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    }
    if (order == 2) {
        const long double h = 1e-3L;
        return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
               (12 * h * h);
    }
    const long double h = 5e-5L;
    return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
}

inline std::vector<double> random_coeffs(std::mt19937_64& rng, int degree, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    for (double& v : c) v = u(rng);
    return c;
}

// The classic smooth rest-to-rest quintic in physical coordinates,
// theta(t) = theta_a + travel * s(u), s = 10u^3 - 15u^4 + 6u^5.
struct QuinticOracle {
    chebmotion::MotionTask task;

    double position(double t) const {
        const double u = (t - task.t_a) / task.duration();
        return task.theta_a + task.travel() * (10 - 15 * u + 6 * u * u) * u * u * u;
    }
    double velocity(double t) const {
        const double u = (t - task.t_a) / task.duration();
        return task.travel() / task.duration() * 30.0 * u * u * (1 - u) * (1 - u);
    }
    double acceleration(double t) const {
        const double u = (t - task.t_a) / task.duration();
        return task.travel() / (task.duration() * task.duration()) * 60.0 * u * (1 - u) *
               (1 - 2 * u);
    }
};

// Shared synthetic setups mirroring the documented defaults.
inline chebmotion::SliderCrankParams default_crank() { return {}; }

inline chebmotion::MotionTask pick_place_task(int degree, bool jerk_zero) {
    return chebmotion::MotionTask{0.0, 3.0299, 0.0, 0.0735, jerk_zero, degree};
}

// Random free coefficients whose profile stays inside the model's fitted
// position band. The dependent-coefficient solve amplifies the free ones,
// so unrestricted draws overshoot by an order of magnitude and land on the
// property fit's extrapolation tail; physically meaningful profiles live
// near the band.
inline std::vector<double> random_feasible_o(std::mt19937_64& rng,
                                             const chebmotion::MotionTask& task,
                                             const chebmotion::PropertyModel& model,
                                             double sigma = 0.05) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> o(static_cast<std::size_t>(task.dof()));
    const double margin = 0.01 * (model.phi_max() - model.phi_min());
    for (int attempt = 0; attempt < 200; ++attempt) {
        const double s = sigma / (1.0 + attempt / 20.0);
        for (double& v : o) v = s * u(rng);
        const auto profile = chebmotion::eliminate_constraints(o, task);
        const auto [lo, hi] = profile.phi_range(513);
        if (lo >= model.phi_min() + margin && hi <= model.phi_max() - margin) return o;
    }
    std::fill(o.begin(), o.end(), 0.0);
    return o;
}

} // namespace testutil
