#include "chebmotion/synthetic.hpp"

#include "chebmotion/linalg.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chebmotion {

SyntheticMechanism SyntheticMechanism::constant(double inertia) {
    if (!(inertia > 0.0))
        throw std::invalid_argument("SyntheticMechanism: inertia must be positive");
    SyntheticMechanism m;
    m.kind_ = Kind::constant;
    m.j0_ = inertia;
    return m;
}

SyntheticMechanism SyntheticMechanism::slider_crank(const SliderCrankParams& params) {
    if (!(params.rod_length > params.crank_radius) || !(params.crank_radius > 0.0))
        throw std::invalid_argument("SyntheticMechanism: need rod length > crank radius > 0");
    if (!(params.crank_inertia > 0.0) || !(params.slider_mass > 0.0))
        throw std::invalid_argument("SyntheticMechanism: masses and inertias must be positive");
    SyntheticMechanism m;
    m.kind_ = Kind::slider_crank;
    m.sc_ = params;
    return m;
}

namespace {

// Slider kinematics: s = r cos t + g, g = sqrt(l^2 - r^2 sin^2 t).
//   ds/dt   = -r sin t - r^2 sin t cos t / g
//   d2s/dt2 = -r cos t - r^2 cos 2t / g - r^4 sin^2 2t / (4 g^3)
struct SliderDerivs {
    double ds;
    double d2s;
};

SliderDerivs slider_derivs(const SliderCrankParams& p, double theta) {
    const double r = p.crank_radius;
    const double l = p.rod_length;
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const double g = std::sqrt(l * l - r * r * st * st);
    const double s2t = std::sin(2.0 * theta);
    const double c2t = std::cos(2.0 * theta);
    SliderDerivs d;
    d.ds = -r * st - r * r * st * ct / g;
    d.d2s = -r * ct - r * r * c2t / g - std::pow(r, 4) * s2t * s2t / (4.0 * g * g * g);
    return d;
}

} // namespace

double SyntheticMechanism::inertia(double theta) const {
    if (kind_ == Kind::constant) return j0_;
    const SliderDerivs d = slider_derivs(sc_, theta);
    return sc_.crank_inertia + sc_.slider_mass * d.ds * d.ds;
}

double SyntheticMechanism::inertia_derivative(double theta) const {
    if (kind_ == Kind::constant) return 0.0;
    const SliderDerivs d = slider_derivs(sc_, theta);
    return 2.0 * sc_.slider_mass * d.ds * d.d2s;
}

double SyntheticMechanism::load_torque(double theta) const {
    if (kind_ == Kind::constant) return 0.0;
    const SliderDerivs d = slider_derivs(sc_, theta);
    return -sc_.load_force * d.ds;
}

PropertySamples SyntheticMechanism::sample(double theta_min, double theta_max,
                                           int n_samples) const {
    if (!(theta_max > theta_min))
        throw std::invalid_argument("SyntheticMechanism::sample: empty range");
    if (n_samples < 4)
        throw std::invalid_argument("SyntheticMechanism::sample: need at least 4 samples");
    std::vector<double> theta(static_cast<std::size_t>(n_samples));
    std::vector<double> j(static_cast<std::size_t>(n_samples));
    std::vector<double> tau(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double t = theta_min + (theta_max - theta_min) * static_cast<double>(i) /
                                         static_cast<double>(n_samples - 1);
        theta[static_cast<std::size_t>(i)] = t;
        j[static_cast<std::size_t>(i)] = inertia(t);
        tau[static_cast<std::size_t>(i)] = load_torque(t);
    }
    return PropertySamples{std::move(theta), std::move(j), std::move(tau)};
}

SolverResult quadratic_oracle(const OptimizationContext& ctx) {
    // The closed form is only valid when tau depends linearly on o, i.e.
    // constant inertia and no load or friction.
    const auto j_coeffs = ctx.model.inertia_series().coeffs();
    const auto dj_coeffs = ctx.model.inertia_slope_series().coeffs();
    const auto tl_coeffs = ctx.model.load_torque_series().coeffs();
    const double j0 = std::abs(j_coeffs.empty() ? 0.0 : j_coeffs[0]);
    if (j0 <= 0.0) throw std::invalid_argument("quadratic_oracle: empty inertia model");
    for (std::size_t k = 1; k < j_coeffs.size(); ++k)
        if (std::abs(j_coeffs[k]) > 1e-12 * j0)
            throw std::invalid_argument("quadratic_oracle: inertia is not constant");
    for (double c : dj_coeffs)
        if (std::abs(c) > 1e-12 * j0)
            throw std::invalid_argument("quadratic_oracle: inertia is not constant");
    const ScaleFactors s = scale_factors(ctx.task);
    const double torque_scale = j0 / (s.a * s.a * std::abs(s.c));
    for (double c : tl_coeffs)
        if (std::abs(c) > 1e-12 * torque_scale)
            throw std::invalid_argument("quadratic_oracle: load torque is not zero");
    if (ctx.friction.mu_v != 0.0)
        throw std::invalid_argument("quadratic_oracle: friction is not zero");

    const auto t_start = std::chrono::steady_clock::now();
    const RmsObjective objective{ctx};
    const int dof = objective.dof();
    const auto nodes = objective.nodes();
    const auto weights = objective.weights();
    const std::size_t nq = weights.size();

    // With the plant verified constant, the torque map is exactly
    // tau(x; o) = J phi_ddot(x; o) / (a^2 c), affine in o. Build its columns
    // from the eliminated profiles directly; probing the full objective at
    // unit vectors would drag phi far off [-1, 1], where the rounding-level
    // high-order fit coefficients blow up under extrapolation.
    const double j_total = j_coeffs[0];
    const double accel_gain = j_total / (s.a * s.a * s.c);

    const std::vector<double> zeros(static_cast<std::size_t>(dof), 0.0);
    const auto accel_at_nodes = [&](std::span<const double> o) {
        const MotionProfile p = eliminate_constraints(o, ctx.task);
        std::vector<double> out(nq);
        p.phi_ddot().eval_batch(nodes, out);
        for (double& v : out) v *= accel_gain;
        return out;
    };
    const std::vector<double> tau0 = accel_at_nodes(zeros);
    std::vector<std::vector<double>> cols(static_cast<std::size_t>(dof));
    for (int j = 0; j < dof; ++j) {
        std::vector<double> unit = zeros;
        unit[static_cast<std::size_t>(j)] = 1.0;
        cols[static_cast<std::size_t>(j)] = accel_at_nodes(unit);
        for (std::size_t i = 0; i < nq; ++i) cols[static_cast<std::size_t>(j)][i] -= tau0[i];
    }

    // Normal equations of min_o (1/2) sum_i w_i (tau0_i + sum_j o_j B_ij)^2.
    std::vector<double> o_star(static_cast<std::size_t>(dof), 0.0);
    if (dof > 0) {
        Matrix gram(static_cast<std::size_t>(dof), static_cast<std::size_t>(dof));
        std::vector<double> rhs(static_cast<std::size_t>(dof), 0.0);
        for (int a = 0; a < dof; ++a) {
            for (int b = a; b < dof; ++b) {
                double acc = 0.0;
                for (std::size_t i = 0; i < nq; ++i)
                    acc += weights[i] * cols[static_cast<std::size_t>(a)][i] *
                           cols[static_cast<std::size_t>(b)][i];
                gram(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = acc;
                gram(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = acc;
            }
            double acc = 0.0;
            for (std::size_t i = 0; i < nq; ++i)
                acc += weights[i] * cols[static_cast<std::size_t>(a)][i] * tau0[i];
            rhs[static_cast<std::size_t>(a)] = -acc;
        }
        o_star = solve_linear(gram, rhs);
    }

    const double f_star = objective(o_star);
    SolverResult result{o_star,
                        eliminate_constraints(o_star, ctx.task),
                        f_star,
                        0,
                        objective.evaluations(),
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                            .count(),
                        SolverId::bfgs,
                        true};
    return result;
}

SolverResult grid_oracle(const OptimizationContext& ctx, int grid_points) {
    const RmsObjective objective{ctx};
    const int dof = objective.dof();
    if (dof > 2) throw std::invalid_argument("grid_oracle: refuses DOF > 2");
    if (grid_points < 1) throw std::invalid_argument("grid_oracle: need at least one grid point");

    const auto t_start = std::chrono::steady_clock::now();
    const double bound = 4.0 / std::numbers::pi;
    const auto coord = [&](int idx) {
        if (grid_points == 1) return 0.0;
        return -bound + 2.0 * bound * static_cast<double>(idx) /
                            (static_cast<double>(grid_points) - 1.0);
    };

    std::vector<double> best_o(static_cast<std::size_t>(dof), 0.0);
    double best_f = std::numeric_limits<double>::infinity();

    std::vector<double> o(static_cast<std::size_t>(dof), 0.0);
    const long total = dof == 0 ? 1
                                : (dof == 1 ? grid_points
                                            : static_cast<long>(grid_points) * grid_points);
    for (long idx = 0; idx < total; ++idx) {
        if (dof >= 1) o[0] = coord(static_cast<int>(idx % grid_points));
        if (dof == 2) o[1] = coord(static_cast<int>(idx / grid_points));
        const double f = objective(o);
        if (f < best_f) {
            best_f = f;
            best_o = o;
        }
    }

    SolverResult result{best_o,
                        eliminate_constraints(best_o, ctx.task),
                        best_f,
                        0,
                        objective.evaluations(),
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                            .count(),
                        SolverId::bfgs,
                        true};
    return result;
}

} // namespace chebmotion
