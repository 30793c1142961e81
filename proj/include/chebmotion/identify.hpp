#pragma once

#include "chebmotion/plant.hpp"

#include <vector>

namespace chebmotion {

// Uniformly sampled position/torque recording from a trial move with an
// arbitrary excitation profile.
struct MeasurementLog {
    std::vector<double> time;     // s, strictly increasing, uniform step
    std::vector<double> position; // rad
    std::vector<double> torque;   // N m

    MeasurementLog(std::vector<double> time, std::vector<double> position,
                   std::vector<double> torque);

    std::size_t size() const { return time.size(); }
};

// Least-squares polynomial through the measured position. The fit runs on
// time rescaled to [-1, 1] (a raw-time monomial basis is hopeless at degree
// 9 and a millisecond scale) and derivatives are taken analytically, which
// is the whole point: differentiating the raw samples would amplify the
// measurement noise.
class PositionPolynomial {
public:
    PositionPolynomial(std::vector<double> scaled_coeffs, double t_scale, double t_center,
                       double residual_rms);

    int degree() const { return static_cast<int>(scaled_coeffs_.size()) - 1; }

    double value(double t) const;
    double velocity(double t) const;
    double acceleration(double t) const;

    // RMS of the fit residual at the sample times.
    double residual_rms() const { return residual_rms_; }

    // Coefficients a_0..a_n of theta(t) = sum a_i t^i in physical time.
    std::vector<double> monomial_coeffs() const;

private:
    std::vector<double> scaled_coeffs_; // monomial in s = (t - t_center)/t_scale
    double t_scale_;
    double t_center_;
    double residual_rms_;
};

PositionPolynomial fit_position_polynomial(const MeasurementLog& log, int degree);

struct FrictionFit {
    FrictionModel friction;
    double residual_before; // ||tau_measured - tau_model(mu=0)||_2
    double residual_after;  // ||tau_measured - tau_model(mu_hat)||_2
    double position_fit_residual_rms;
};

// Fit mu_v by comparing the measured torque with the friction-free model
// torque along the fitted motion. The model torque is affine in mu_v, so
// the 2-norm minimum is the closed-form one-dimensional least squares
//   mu_hat = sum r_i s_i / sum s_i^2,  r = tau_meas - tau_model(mu=0),
//   s = theta_dot.
// A log with (near-)zero speed throughout is unidentifiable and raises
// std::runtime_error.
FrictionFit identify_friction(const MeasurementLog& log, const PropertyModel& model,
                              int position_fit_degree = 9);

} // namespace chebmotion
