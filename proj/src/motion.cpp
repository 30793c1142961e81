#include "chebmotion/motion.hpp"

#include "chebmotion/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace chebmotion {

MotionTask::MotionTask(double theta_a_, double theta_b_, double t_a_, double t_b_, bool jerk_zero_,
                       int degree_)
    : theta_a(theta_a_), theta_b(theta_b_), t_a(t_a_), t_b(t_b_), jerk_zero(jerk_zero_),
      degree(degree_) {
    if (!(t_b > t_a)) throw std::invalid_argument("MotionTask: t_b must exceed t_a");
    if (theta_b == theta_a) throw std::invalid_argument("MotionTask: zero-length motion");
    if (!std::isfinite(theta_a) || !std::isfinite(theta_b) || !std::isfinite(t_a) ||
        !std::isfinite(t_b))
        throw std::invalid_argument("MotionTask: non-finite endpoint");
    const int min_degree = jerk_zero ? 7 : 5;
    if (degree < min_degree)
        throw std::invalid_argument("MotionTask: degree too low for the boundary constraints");
}

ScaleFactors scale_factors(const MotionTask& task) {
    ScaleFactors s;
    s.a = 0.5 * (task.t_b - task.t_a);
    s.b = 0.5 * (task.t_b + task.t_a);
    s.c = 2.0 / (task.theta_b - task.theta_a);
    s.d = -(task.theta_b + task.theta_a) / (task.theta_b - task.theta_a);
    s.e = 0.5 * (task.theta_b - task.theta_a);
    return s;
}

MotionProfile::MotionProfile(MotionTask task, ChebyshevSeries phi, std::vector<double> free_coeffs)
    : task_(task), scale_(scale_factors(task)), phi_(std::move(phi)),
      dphi_(phi_.derivative()), ddphi_(dphi_.derivative()), dddphi_(ddphi_.derivative()),
      free_coeffs_(std::move(free_coeffs)) {}

KinematicState MotionProfile::state(double x) const {
    if (std::abs(x) > 1.0) throw std::domain_error("MotionProfile::state: |x| > 1");
    double p, v, a, j;
    if (x == 1.0 || x == -1.0) {
        const int end = (x > 0.0) ? 1 : -1;
        p = phi_.endpoint_value(0, end);
        v = phi_.endpoint_value(1, end);
        a = phi_.endpoint_value(2, end);
        j = phi_.endpoint_value(3, end);
    } else {
        p = phi_.eval_unchecked(x);
        v = dphi_.eval_unchecked(x);
        a = ddphi_.eval_unchecked(x);
        j = dddphi_.eval_unchecked(x);
    }
    KinematicState k;
    k.theta = (p - scale_.d) / scale_.c;
    k.theta_dot = v / (scale_.a * scale_.c);
    k.theta_ddot = a / (scale_.a * scale_.a * scale_.c);
    k.jerk = j / (scale_.a * scale_.a * scale_.a * scale_.c);
    return k;
}

double MotionProfile::boundary_residual() const {
    double r = std::max(std::abs(phi_.eval(-1.0) + 1.0), std::abs(phi_.eval(1.0) - 1.0));
    for (const ChebyshevSeries* d : {&dphi_, &ddphi_}) {
        r = std::max(r, std::abs(d->eval(-1.0)));
        r = std::max(r, std::abs(d->eval(1.0)));
    }
    if (task_.jerk_zero) {
        r = std::max(r, std::abs(dddphi_.eval(-1.0)));
        r = std::max(r, std::abs(dddphi_.eval(1.0)));
    }
    return r;
}

std::pair<double, double> MotionProfile::phi_range(std::size_t grid) const {
    double lo = phi_.eval(-1.0), hi = lo;
    for (std::size_t i = 1; i < grid; ++i) {
        const double x = -1.0 + 2.0 * static_cast<double>(i) / (static_cast<double>(grid) - 1.0);
        const double v = phi_.eval_unchecked(std::min(1.0, x));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

MotionProfile eliminate_constraints(std::span<const double> free_coeffs, const MotionTask& task) {
    const int dep = task.dependent_count();
    const int n = task.degree;
    if (static_cast<int>(free_coeffs.size()) != task.dof())
        throw std::invalid_argument("eliminate_constraints: free-coefficient count must match DOF");

    const int orders = dep / 2; // 3 constraint orders per end, 4 with jerk
    Matrix a(static_cast<std::size_t>(dep), static_cast<std::size_t>(dep));
    std::vector<double> rhs(static_cast<std::size_t>(dep), 0.0);

    std::size_t row = 0;
    for (int end : {-1, 1}) {
        for (int k = 0; k < orders; ++k, ++row) {
            for (int j = 0; j < dep; ++j)
                a(row, static_cast<std::size_t>(j)) = endpoint_derivative(j, k, end);
            double target = (k == 0) ? static_cast<double>(end) : 0.0;
            for (int j = dep; j <= n; ++j)
                target -= free_coeffs[static_cast<std::size_t>(j - dep)] *
                          endpoint_derivative(j, k, end);
            rhs[row] = target;
        }
    }

    const std::vector<double> dependent = solve_linear(a, rhs);

    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 0; j < dep; ++j) coeffs[static_cast<std::size_t>(j)] = dependent[static_cast<std::size_t>(j)];
    for (int j = dep; j <= n; ++j)
        coeffs[static_cast<std::size_t>(j)] = free_coeffs[static_cast<std::size_t>(j - dep)];

    MotionProfile profile{task, ChebyshevSeries{std::move(coeffs)},
                          std::vector<double>(free_coeffs.begin(), free_coeffs.end())};
    // The solve is refined, so a residual this large means the constraint
    // system itself went bad.
    if (!(profile.boundary_residual() < 1e-9))
        throw std::runtime_error("eliminate_constraints: boundary residual out of tolerance");
    return profile;
}

std::vector<KinematicState> kinematics(const MotionProfile& profile,
                                       std::span<const double> x_grid) {
    std::vector<KinematicState> out;
    out.reserve(x_grid.size());
    for (double x : x_grid) out.push_back(profile.state(x));
    return out;
}

TrapezoidState trapezoid13_state(double x) {
    if (std::abs(x) > 1.0) throw std::domain_error("trapezoid13_state: |x| > 1");
    // Ramp phases cover the outer thirds; the traversal of 2 units of phi
    // over 2 units of x fixes the plateau speed at 1.5 and the ramp
    // acceleration at 2.25.
    TrapezoidState s;
    if (x < -1.0 / 3.0) {
        s.ddphi = 2.25;
        s.dphi = 2.25 * (x + 1.0);
        s.phi = -1.0 + 1.125 * (x + 1.0) * (x + 1.0);
    } else if (x <= 1.0 / 3.0) {
        s.ddphi = 0.0;
        s.dphi = 1.5;
        s.phi = 1.5 * x;
    } else {
        s.ddphi = -2.25;
        s.dphi = 2.25 * (1.0 - x);
        s.phi = 1.0 - 1.125 * (1.0 - x) * (1.0 - x);
    }
    return s;
}

SampledProfile trapezoid13_profile(const MotionTask& task, std::size_t grid_points) {
    if (grid_points < 2) throw std::invalid_argument("trapezoid13_profile: need at least 2 points");
    SampledProfile p{task, {}, {}, {}, {}};
    p.x.reserve(grid_points);
    p.phi.reserve(grid_points);
    p.dphi.reserve(grid_points);
    p.ddphi.reserve(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = -1.0 + 2.0 * static_cast<double>(i) / (static_cast<double>(grid_points) - 1.0);
        const TrapezoidState s = trapezoid13_state(std::min(1.0, x));
        p.x.push_back(x);
        p.phi.push_back(s.phi);
        p.dphi.push_back(s.dphi);
        p.ddphi.push_back(s.ddphi);
    }
    return p;
}

std::variant<MotionProfile, SampledProfile> reference_profile(ReferenceKind kind,
                                                              const MotionTask& task) {
    switch (kind) {
    case ReferenceKind::poly5: {
        MotionTask t{task.theta_a, task.theta_b, task.t_a, task.t_b, false, 5};
        return eliminate_constraints({}, t);
    }
    case ReferenceKind::poly7J0: {
        MotionTask t{task.theta_a, task.theta_b, task.t_a, task.t_b, true, 7};
        return eliminate_constraints({}, t);
    }
    case ReferenceKind::trapezoid13:
        return trapezoid13_profile(task);
    }
    throw std::invalid_argument("reference_profile: unknown kind");
}

} // namespace chebmotion
