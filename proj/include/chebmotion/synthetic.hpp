#pragma once

#include "chebmotion/optimize.hpp"
#include "chebmotion/plant.hpp"

namespace chebmotion {

// Slider-crank with a point-mass slider: the canonical position-dependent
// test plant. Slider position, reduced inertia and load torque all have
// documented closed forms, so fitted models and torque code can be checked
// against analytic truth.
struct SliderCrankParams {
    double crank_inertia = 0.002; // kg m^2
    double slider_mass = 1.0;     // kg
    double crank_radius = 0.05;   // m
    double rod_length = 0.2;      // m
    double load_force = 10.0;     // N, resisting the slider
};

class SyntheticMechanism {
public:
    static SyntheticMechanism constant(double inertia);
    static SyntheticMechanism slider_crank(const SliderCrankParams& params);

    bool is_constant() const { return kind_ == Kind::constant; }

    // Closed forms. For the slider-crank with s(theta) = r cos t + sqrt(l^2
    // - r^2 sin^2 t):
    //   J(theta)     = J_crank + m (ds/dtheta)^2
    //   dJ/dtheta    = 2 m (ds/dtheta)(d2s/dtheta2)
    //   tau_l(theta) = -F ds/dtheta
    double inertia(double theta) const;
    double inertia_derivative(double theta) const;
    double load_torque(double theta) const;

    // Uniform sample grid over [theta_min, theta_max].
    PropertySamples sample(double theta_min, double theta_max, int n_samples) const;

private:
    enum class Kind { constant, slider_crank };
    Kind kind_;
    double j0_ = 0.0;
    SliderCrankParams sc_{};
};

// Exact solver for the constant-inertia, zero-load, zero-friction context:
// tau is linear in the free coefficients there, so tau_rms^2 is a convex
// quadratic whose global optimum follows from the normal equations over the
// objective's torque map. Refuses (std::invalid_argument) any context whose
// plant is not of that form.
SolverResult quadratic_oracle(const OptimizationContext& ctx);

// Brute force: exhaustive evaluation over the bounded design box with
// grid_points per axis (1 means just the box center o = 0). Refuses DOF >
// 2.
SolverResult grid_oracle(const OptimizationContext& ctx, int grid_points);

} // namespace chebmotion
