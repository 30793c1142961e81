#pragma once

#include "chebmotion/chebyshev.hpp"
#include "chebmotion/motion.hpp"

#include <span>
#include <vector>

namespace chebmotion {

// Position-dependent system properties on a strictly increasing angle grid,
// as delivered by multibody motion simulations.
struct PropertySamples {
    std::vector<double> theta;       // rad
    std::vector<double> inertia;     // kg m^2, reduced to the drive axis
    std::vector<double> load_torque; // N m

    PropertySamples(std::vector<double> theta, std::vector<double> inertia,
                    std::vector<double> load_torque);

    std::size_t size() const { return theta.size(); }
};

// PMSM parameters from the data sheet. The inductance is stored for
// documentation only; its reactive power averages to zero over a cycle and
// is left out of the power model.
struct MotorParams {
    double resistance;     // ohm
    double torque_const;   // N m / A
    double back_emf_const; // V s / rad
    int pole_pairs;
    double rotor_inertia = 0.0; // kg m^2
    double inductance = 0.0;    // H (unused)

    MotorParams(double resistance, double torque_const, double back_emf_const, int pole_pairs,
                double rotor_inertia = 0.0, double inductance = 0.0);
};

struct FrictionModel {
    double mu_v = 0.0; // N m s / rad, equivalent viscous coefficient

    FrictionModel() = default;
    explicit FrictionModel(double mu_v);
};

// Chebyshev least-squares fits of J and tau_l over the rescaled position
// phi, with the inertia derivative taken analytically. The motor inertia is
// folded into the inertia fit as a constant so that every torque evaluation
// sees the total reduced inertia.
class PropertyModel {
public:
    PropertyModel(ChebyshevSeries inertia_fit, ChebyshevSeries load_torque_fit,
                  ScaleFactors scale, double phi_min, double phi_max, double inertia_residual,
                  double load_torque_residual, double motor_inertia);

    double inertia(double phi) const { return j_fit_.eval_unchecked(phi); }
    double inertia_slope(double phi) const { return dj_dphi_.eval_unchecked(phi); } // dJ/dphi
    double load_torque(double phi) const { return tau_l_fit_.eval_unchecked(phi); }

    const ChebyshevSeries& inertia_series() const { return j_fit_; }
    const ChebyshevSeries& inertia_slope_series() const { return dj_dphi_; }
    const ChebyshevSeries& load_torque_series() const { return tau_l_fit_; }
    const ScaleFactors& scale() const { return scale_; }

    double phi_min() const { return phi_min_; }
    double phi_max() const { return phi_max_; }
    double inertia_fit_residual() const { return inertia_residual_; }
    double load_torque_fit_residual() const { return load_torque_residual_; }
    double motor_inertia() const { return motor_inertia_; }

    // True when phi lies inside the fitted interval (tiny slack for
    // rounding at the ends).
    bool in_fitted_range(double phi) const;

private:
    ChebyshevSeries j_fit_;
    ChebyshevSeries dj_dphi_;
    ChebyshevSeries tau_l_fit_;
    ScaleFactors scale_;
    double phi_min_, phi_max_;
    double inertia_residual_, load_torque_residual_;
    double motor_inertia_;
};

// Rescale the sample grid to phi, least-squares fit both properties, and
// differentiate the inertia fit analytically. The samples must cover the
// task's position range (a wider grid is welcome: it gives the model an
// extrapolation margin for overshooting profiles). Residuals are max
// absolute deviation relative to the property's scale.
PropertyModel fit_property_model(const PropertySamples& samples, const MotionTask& task,
                                 int fit_degree = 20, double motor_inertia = 0.0);

// Torque equation on rescaled coordinates:
//   tau_m(x) = tau_l(phi) + (1/2)(dJ/dphi)(1/e)(phi_dot/(a c))^2
//            + J(phi) phi_ddot/(a^2 c) + mu_v phi_dot/(a c)
double motor_torque_rescaled(const MotionProfile& profile, const PropertyModel& model,
                             const FrictionModel& friction, double x);

// Same equation in physical coordinates:
//   tau_m = tau_l(theta) + J(theta) theta_ddot + (1/2)(dJ/dtheta) theta_dot^2
//         + mu_v theta_dot
// with dJ/dtheta recovered from the phi-domain fit. Positions outside the
// fitted range raise std::out_of_range.
double motor_torque_physical(double theta, double theta_dot, double theta_ddot,
                             const PropertyModel& model, const FrictionModel& friction);

// Torque along the trapezoidal reference at rescaled x. The time/position
// scales live in the model, so no task argument is needed.
double motor_torque_trapezoid(const PropertyModel& model, const FrictionModel& friction, double x);

// Instantaneous electrical power P_e = (R/kt^2) tau^2 + (p kv/kt) tau
// theta_dot; negative values are regeneration returned to the supply.
double electrical_power(const MotorParams& motor, double tau_m, double theta_dot);

// Energy split over the move (quadrature in x, dt = a dx):
//   kinetic   (p kv/kt) int (tau_a + tau_v) theta_dot dt   -> ~0 rest-to-rest
//   potential (p kv/kt) int tau_l theta_dot dt             -> endpoint-only
//   loss      int [ (R/kt^2) tau_m^2 + (p kv/kt) tau_f theta_dot ] dt
struct EnergyBreakdown {
    double kinetic;   // J
    double potential; // J
    double loss;      // J
    double total;     // J
};

EnergyBreakdown energy_decomposition(const MotionProfile& profile, const PropertyModel& model,
                                     const MotorParams& motor, const FrictionModel& friction,
                                     int quadrature_nodes = 201);

// RMS motor torque of the trapezoidal reference, integrated segment-wise so
// the acceleration jumps at +-1/3 cost nothing in accuracy.
double trapezoid13_rms_torque(const PropertyModel& model, const FrictionModel& friction,
                              int nodes_per_segment = 67);

} // namespace chebmotion
