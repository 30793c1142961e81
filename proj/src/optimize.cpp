#include "chebmotion/optimize.hpp"

#include "chebmotion/kernels.hpp"
#include "chebmotion/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace chebmotion {

OptimizationContext::OptimizationContext(MotionTask task_, PropertyModel model_,
                                         FrictionModel friction_,
                                         std::optional<MotorParams> motor_, int quadrature_nodes_)
    : task(task_), model(std::move(model_)), friction(friction_), motor(std::move(motor_)),
      quadrature_nodes(quadrature_nodes_) {
    if (quadrature_nodes < 33 || quadrature_nodes % 2 == 0)
        throw std::invalid_argument("OptimizationContext: quadrature_nodes must be odd and >= 33");
}

RmsObjective::RmsObjective(const OptimizationContext& ctx)
    : dof_(ctx.task.dof()), scale_(scale_factors(ctx.task)), friction_(ctx.friction),
      model_(ctx.model) {
    const GaussLegendreRule rule = gauss_legendre(static_cast<std::size_t>(ctx.quadrature_nodes));
    nodes_ = rule.nodes;
    weights_ = rule.weights;
    const std::size_t nq = nodes_.size();

    auto values_of = [&](const MotionProfile& p, std::vector<double>& phi, std::vector<double>& dphi,
                         std::vector<double>& ddphi) {
        phi.resize(nq);
        dphi.resize(nq);
        ddphi.resize(nq);
        p.phi().eval_batch(nodes_, phi);
        p.phi_dot().eval_batch(nodes_, dphi);
        p.phi_ddot().eval_batch(nodes_, ddphi);
    };

    const std::vector<double> zeros(static_cast<std::size_t>(dof_), 0.0);
    const MotionProfile base = eliminate_constraints(zeros, ctx.task);
    values_of(base, phi0_, dphi0_, ddphi0_);

    phi_cols_.resize(static_cast<std::size_t>(dof_));
    dphi_cols_.resize(static_cast<std::size_t>(dof_));
    ddphi_cols_.resize(static_cast<std::size_t>(dof_));
    for (int j = 0; j < dof_; ++j) {
        std::vector<double> unit = zeros;
        unit[static_cast<std::size_t>(j)] = 1.0;
        const MotionProfile p = eliminate_constraints(unit, ctx.task);
        auto& pc = phi_cols_[static_cast<std::size_t>(j)];
        auto& dc = dphi_cols_[static_cast<std::size_t>(j)];
        auto& ac = ddphi_cols_[static_cast<std::size_t>(j)];
        values_of(p, pc, dc, ac);
        for (std::size_t i = 0; i < nq; ++i) {
            pc[i] -= phi0_[i];
            dc[i] -= dphi0_[i];
            ac[i] -= ddphi0_[i];
        }
    }
}

void RmsObjective::profile_at_nodes(std::span<const double> o, std::vector<double>& phi,
                                    std::vector<double>& dphi, std::vector<double>& ddphi) const {
    if (static_cast<int>(o.size()) != dof_)
        throw std::invalid_argument("RmsObjective: design vector size does not match the DOF");
    const auto& k = kernels::active();
    phi = phi0_;
    dphi = dphi0_;
    ddphi = ddphi0_;
    const std::size_t nq = nodes_.size();
    for (int j = 0; j < dof_; ++j) {
        const double oj = o[static_cast<std::size_t>(j)];
        if (oj == 0.0) continue;
        k.axpy(oj, phi_cols_[static_cast<std::size_t>(j)].data(), phi.data(), nq);
        k.axpy(oj, dphi_cols_[static_cast<std::size_t>(j)].data(), dphi.data(), nq);
        k.axpy(oj, ddphi_cols_[static_cast<std::size_t>(j)].data(), ddphi.data(), nq);
    }
}

std::vector<double> RmsObjective::torque_at_nodes(std::span<const double> o) const {
    std::vector<double> phi, dphi, ddphi;
    profile_at_nodes(o, phi, dphi, ddphi);

    const std::size_t nq = nodes_.size();
    std::vector<double> j_val(nq), dj_val(nq), tau_l(nq);
    const auto& k = kernels::active();
    const auto j_coeffs = model_.inertia_series().coeffs();
    const auto dj_coeffs = model_.inertia_slope_series().coeffs();
    const auto tl_coeffs = model_.load_torque_series().coeffs();
    k.clenshaw(j_coeffs.data(), j_coeffs.size(), phi.data(), nq, j_val.data());
    k.clenshaw(dj_coeffs.data(), dj_coeffs.size(), phi.data(), nq, dj_val.data());
    k.clenshaw(tl_coeffs.data(), tl_coeffs.size(), phi.data(), nq, tau_l.data());

    const double inv_ac = 1.0 / (scale_.a * scale_.c);
    const double inv_a2c = 1.0 / (scale_.a * scale_.a * scale_.c);
    const double inv_e = 1.0 / scale_.e;
    const double mu = friction_.mu_v;

    std::vector<double> tau(nq);
    for (std::size_t i = 0; i < nq; ++i) {
        const double theta_dot = dphi[i] * inv_ac;
        const double theta_ddot = ddphi[i] * inv_a2c;
        tau[i] = tau_l[i] + 0.5 * dj_val[i] * inv_e * theta_dot * theta_dot +
                 j_val[i] * theta_ddot + mu * theta_dot;
    }
    return tau;
}

double RmsObjective::operator()(std::span<const double> o) const {
    const std::vector<double> tau = torque_at_nodes(o);
    ++evals_;
    const double sumsq =
        kernels::active().weighted_sumsq(weights_.data(), tau.data(), tau.size());
    return std::sqrt(0.5 * sumsq);
}

double rms_objective(std::span<const double> free_coeffs, const OptimizationContext& ctx) {
    return RmsObjective{ctx}(free_coeffs);
}

std::string to_string(SolverId id) { return id == SolverId::bfgs ? "bfgs" : "ga"; }

std::vector<SweepRow> degree_sweep(const OptimizationContext& base, std::span<const int> degrees,
                                   SolverChoice solvers, std::uint64_t seed,
                                   const BfgsOptions& bfgs_options, const GaOptions& ga_options) {
    // Reference: the minimal-degree constrained polynomial for the task's
    // jerk setting.
    const int ref_degree = base.task.jerk_zero ? 7 : 5;
    MotionTask ref_task{base.task.theta_a, base.task.theta_b, base.task.t_a, base.task.t_b,
                        base.task.jerk_zero, ref_degree};
    OptimizationContext ref_ctx{ref_task, base.model, base.friction, base.motor,
                                base.quadrature_nodes};
    const double ref_rms = rms_objective({}, ref_ctx);

    std::vector<SweepRow> rows;
    SweepRow ref_row;
    ref_row.degree = ref_degree;
    ref_row.jerk_zero = base.task.jerk_zero;
    ref_row.solver = "ref";
    ref_row.tau_rms = ref_rms;
    ref_row.saving_pct = 0.0;
    rows.push_back(ref_row);

    for (int degree : degrees) {
        MotionTask task{base.task.theta_a, base.task.theta_b, base.task.t_a, base.task.t_b,
                        base.task.jerk_zero, degree};
        OptimizationContext ctx{task, base.model, base.friction, base.motor,
                                base.quadrature_nodes};
        std::vector<SolverResult> results;
        if (solvers == SolverChoice::bfgs || solvers == SolverChoice::both)
            results.push_back(solve_bfgs(ctx, bfgs_options));
        if (solvers == SolverChoice::ga || solvers == SolverChoice::both)
            results.push_back(solve_ga(ctx, seed, ga_options));
        for (const SolverResult& r : results) {
            SweepRow row;
            row.degree = degree;
            row.jerk_zero = base.task.jerk_zero;
            row.solver = to_string(r.solver);
            row.tau_rms = r.tau_rms;
            row.saving_pct = (ref_rms - r.tau_rms) / ref_rms * 100.0;
            row.iterations = r.iterations;
            row.wall_time_s = r.wall_time_s;
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace chebmotion
