#pragma once

#include "chebmotion/motion.hpp"
#include "chebmotion/plant.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chebmotion {

// Everything a solver needs: the task, the plant, and the quadrature
// resolution of the objective.
struct OptimizationContext {
    MotionTask task;
    PropertyModel model;
    FrictionModel friction;
    std::optional<MotorParams> motor; // only for energy reporting
    int quadrature_nodes = 201;       // >= 33 and odd

    OptimizationContext(MotionTask task, PropertyModel model, FrictionModel friction = {},
                        std::optional<MotorParams> motor = std::nullopt,
                        int quadrature_nodes = 201);
};

// tau_rms(o) = sqrt( (1/2) int_{-1}^{1} tau_m(phi(x, o))^2 dx ) by
// Gauss-Legendre quadrature.
//
// The boundary elimination is affine in o, so the profile and its
// derivatives at the quadrature nodes are precomputed as an affine map
// (base profile plus one column per free coefficient); each evaluation then
// costs three axpy passes per column plus three property-series batch
// evaluations through the active kernel.
class RmsObjective {
public:
    explicit RmsObjective(const OptimizationContext& ctx);

    int dof() const { return dof_; }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    double operator()(std::span<const double> free_coeffs) const;

    // Motor torque at the quadrature nodes for the given design vector (the
    // linear map the quadratic oracle builds its normal equations from).
    std::vector<double> torque_at_nodes(std::span<const double> free_coeffs) const;

    long evaluations() const { return evals_; }

private:
    void profile_at_nodes(std::span<const double> o, std::vector<double>& phi,
                          std::vector<double>& dphi, std::vector<double>& ddphi) const;

    int dof_;
    ScaleFactors scale_;
    FrictionModel friction_;
    PropertyModel model_; // own copy: the evaluator outlives many contexts
    std::vector<double> nodes_, weights_;
    // base profile (o = 0) and per-coefficient columns at the nodes
    std::vector<double> phi0_, dphi0_, ddphi0_;
    std::vector<std::vector<double>> phi_cols_, dphi_cols_, ddphi_cols_;
    mutable long evals_ = 0;
};

double rms_objective(std::span<const double> free_coeffs, const OptimizationContext& ctx);

enum class SolverId { bfgs, ga };

std::string to_string(SolverId id);

struct SolverResult {
    std::vector<double> free_coeffs;
    MotionProfile profile;
    double tau_rms = 0.0;
    int iterations = 0;
    long objective_evals = 0;
    double wall_time_s = 0.0;
    SolverId solver = SolverId::bfgs;
    bool converged = false;
};

struct BfgsOptions {
    int max_iterations = 500;
    double gradient_tol = 1e-8;  // on ||g||_inf relative to max(1, |f|)
    double stall_tol = 1e-12;    // relative decrease over stall_iterations
    int stall_iterations = 3;
    double fd_step = 1e-6; // central-difference step, scaled per coordinate
};

// Quasi-Newton descent from o = 0 with a strong-Wolfe line search and
// central-difference gradients. Never returns an objective above the o = 0
// reference; a failed line search ends the run with converged = false.
SolverResult solve_bfgs(const OptimizationContext& ctx, const BfgsOptions& options = {});

struct GaOptions {
    int population = 0;          // 0: 20 * DOF, at least 60
    int max_generations = 300;
    int stall_generations = 50;
    int tournament_size = 3;
    double crossover_rate = 0.9;
    double blend_alpha = 0.5;
    double mutation_rate = 0.0;  // 0: 1 / DOF
    double mutation_sigma = 0.0; // 0: 0.1 * box width (initial)
    double mutation_decay = 0.97; // per-generation sigma decay (1 disables)
    // Diagnostics hook, called once per generation with the population and
    // its fitness values.
    std::function<void(int generation, const std::vector<std::vector<double>>& population,
                       const std::vector<double>& fitness)>
        on_generation;
};

// Real-coded genetic algorithm over the box |o_i| <= 4/pi (the design-space
// bound for every eliminated-profile coefficient above index 5). Population
// is seeded half as small zero-mean perturbations of o = 0 and half uniform
// in the box; tournament selection, blend crossover, Gaussian mutation with
// clipping, elitism of two. Deterministic for a fixed seed.
SolverResult solve_ga(const OptimizationContext& ctx, std::uint64_t seed,
                      const GaOptions& options = {});

enum class SolverChoice { bfgs, ga, both };

struct SweepRow {
    int degree = 0;
    bool jerk_zero = false;
    std::string solver; // "ref", "bfgs", "ga"
    double tau_rms = 0.0;
    double saving_pct = 0.0; // (ref - this)/ref * 100
    int iterations = 0;
    double wall_time_s = 0.0;
};

// One row per (degree, solver) plus a leading reference row (poly5 or
// poly7J0 at the task's jerk setting).
std::vector<SweepRow> degree_sweep(const OptimizationContext& base, std::span<const int> degrees,
                                   SolverChoice solvers, std::uint64_t seed = 0,
                                   const BfgsOptions& bfgs_options = {},
                                   const GaOptions& ga_options = {});

} // namespace chebmotion
