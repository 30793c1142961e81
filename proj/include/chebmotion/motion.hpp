#pragma once

#include "chebmotion/chebyshev.hpp"

#include <span>
#include <variant>
#include <vector>

namespace chebmotion {

// A rest-to-rest point-to-point task: move from theta_a at t_a to theta_b
// at t_b with zero boundary speed and acceleration (plus zero boundary jerk
// when jerk_zero is set), described by a Chebyshev profile of the given
// degree.
struct MotionTask {
    double theta_a; // rad
    double theta_b; // rad
    double t_a;     // s
    double t_b;     // s
    bool jerk_zero = false;
    int degree = 5;

    MotionTask(double theta_a, double theta_b, double t_a, double t_b, bool jerk_zero = false,
               int degree = 5);

    // Number of boundary-eliminated coefficients: 6, or 8 with the jerk
    // constraint.
    int dependent_count() const { return jerk_zero ? 8 : 6; }
    // Free design parameters p_6..p_n (p_8..p_n with the jerk constraint).
    int dof() const { return degree + 1 - dependent_count(); }

    double duration() const { return t_b - t_a; }
    double travel() const { return theta_b - theta_a; }
};

// Affine maps between physical and rescaled coordinates:
//   t     = a x + b,            x   in [-1, 1]
//   phi   = c theta + d,        phi in [-1, 1]
//   dJ/dphi = e dJ/dtheta,      with c e = 1
struct ScaleFactors {
    double a; // s
    double b; // s
    double c; // 1/rad
    double d; // dimensionless
    double e; // rad
};

ScaleFactors scale_factors(const MotionTask& task);

// Physical kinematic state at one rescaled abscissa.
struct KinematicState {
    double theta;      // rad
    double theta_dot;  // rad/s
    double theta_ddot; // rad/s^2
    double jerk;       // rad/s^3
};

// A boundary-feasible profile: phi(x) together with its derivative series
// and the free coefficients it was assembled from.
class MotionProfile {
public:
    MotionProfile(MotionTask task, ChebyshevSeries phi, std::vector<double> free_coeffs);

    const MotionTask& task() const { return task_; }
    const ScaleFactors& scale() const { return scale_; }
    const ChebyshevSeries& phi() const { return phi_; }
    const ChebyshevSeries& phi_dot() const { return dphi_; }
    const ChebyshevSeries& phi_ddot() const { return ddphi_; }
    const ChebyshevSeries& phi_dddot() const { return dddphi_; }
    std::span<const double> free_coeffs() const { return free_coeffs_; }

    // Physical kinematics at x in [-1, 1]. At x = +-1 exactly, derivatives
    // come from the closed-form endpoint sums: Clenshaw loses digits right
    // at the interval ends for high-order derivative series, and the
    // boundary values are the ones divided by the smallest scale factors.
    KinematicState state(double x) const;

    // Largest boundary-constraint violation of phi (and its derivatives up
    // to the jerk order implied by the task), measured by Clenshaw
    // evaluation of the derivative series at +-1.
    double boundary_residual() const;

    // min/max of phi over a dense grid on [-1, 1]; reported with results
    // (an optimized profile may overshoot the [-1, 1] endpoint band).
    std::pair<double, double> phi_range(std::size_t grid = 2001) const;

private:
    MotionTask task_;
    ScaleFactors scale_;
    ChebyshevSeries phi_, dphi_, ddphi_, dddphi_;
    std::vector<double> free_coeffs_;
};

// Solve the 6x6 (8x8 with jerk_zero) boundary system for p_0..p_5
// (p_0..p_7) given the free coefficients o = [p_6..p_n] ([p_8..p_n]).
// Rows are the closed-form endpoint derivative values; the right-hand side
// is [-1,0,0(,0), 1,0,0(,0)] minus the free-coefficient contribution.
MotionProfile eliminate_constraints(std::span<const double> free_coeffs, const MotionTask& task);

// Batch kinematics over a grid of rescaled abscissae.
std::vector<KinematicState> kinematics(const MotionProfile& profile, std::span<const double> x_grid);

enum class ReferenceKind {
    poly5,       // minimal jerk-free polynomial (degree 5)
    poly7J0,     // minimal jerk-zero polynomial (degree 7)
    trapezoid13, // trapezoidal velocity, 1/3 accel / 1/3 cruise / 1/3 decel
};

// Rescaled trapezoidal-velocity state (phi and x-derivatives) at x.
struct TrapezoidState {
    double phi;
    double dphi;
    double ddphi;
};

TrapezoidState trapezoid13_state(double x);

// The trapezoid is comparison-only and not polynomial, so it is shipped as
// a dense sample table rather than a ChebyshevSeries.
struct SampledProfile {
    MotionTask task;
    std::vector<double> x;
    std::vector<double> phi;
    std::vector<double> dphi;
    std::vector<double> ddphi;
};

SampledProfile trapezoid13_profile(const MotionTask& task, std::size_t grid_points = 4097);

// poly5 / poly7J0 come back as a MotionProfile (identical to
// eliminate_constraints with empty o at the minimal degree); trapezoid13 as
// a SampledProfile.
std::variant<MotionProfile, SampledProfile> reference_profile(ReferenceKind kind,
                                                              const MotionTask& task);

} // namespace chebmotion
