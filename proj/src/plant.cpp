#include "chebmotion/plant.hpp"

#include "chebmotion/linalg.hpp"
#include "chebmotion/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chebmotion {

PropertySamples::PropertySamples(std::vector<double> theta_, std::vector<double> inertia_,
                                 std::vector<double> load_torque_)
    : theta(std::move(theta_)), inertia(std::move(inertia_)), load_torque(std::move(load_torque_)) {
    if (theta.size() != inertia.size() || theta.size() != load_torque.size())
        throw std::invalid_argument("PropertySamples: column lengths differ");
    if (theta.size() < 4) throw std::invalid_argument("PropertySamples: need at least 4 samples");
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (!std::isfinite(theta[i]) || !std::isfinite(inertia[i]) || !std::isfinite(load_torque[i]))
            throw std::invalid_argument("PropertySamples: non-finite value");
        if (i > 0 && !(theta[i] > theta[i - 1]))
            throw std::invalid_argument("PropertySamples: angle grid must be strictly increasing");
        if (!(inertia[i] > 0.0))
            throw std::invalid_argument("PropertySamples: inertia must be positive");
    }
}

MotorParams::MotorParams(double resistance_, double torque_const_, double back_emf_const_,
                         int pole_pairs_, double rotor_inertia_, double inductance_)
    : resistance(resistance_), torque_const(torque_const_), back_emf_const(back_emf_const_),
      pole_pairs(pole_pairs_), rotor_inertia(rotor_inertia_), inductance(inductance_) {
    if (!(resistance > 0.0)) throw std::invalid_argument("MotorParams: resistance must be positive");
    if (!(torque_const > 0.0))
        throw std::invalid_argument("MotorParams: torque constant must be positive");
    if (pole_pairs < 1) throw std::invalid_argument("MotorParams: pole pairs must be >= 1");
    if (back_emf_const < 0.0 || rotor_inertia < 0.0 || inductance < 0.0)
        throw std::invalid_argument("MotorParams: negative parameter");
}

FrictionModel::FrictionModel(double mu_v_) : mu_v(mu_v_) {
    if (!(mu_v >= 0.0)) throw std::invalid_argument("FrictionModel: mu_v must be >= 0");
}

PropertyModel::PropertyModel(ChebyshevSeries inertia_fit, ChebyshevSeries load_torque_fit,
                             ScaleFactors scale, double phi_min, double phi_max,
                             double inertia_residual, double load_torque_residual,
                             double motor_inertia)
    : j_fit_(std::move(inertia_fit)), dj_dphi_(j_fit_.derivative()),
      tau_l_fit_(std::move(load_torque_fit)), scale_(scale), phi_min_(phi_min),
      phi_max_(phi_max), inertia_residual_(inertia_residual),
      load_torque_residual_(load_torque_residual), motor_inertia_(motor_inertia) {}

bool PropertyModel::in_fitted_range(double phi) const {
    const double slack = 1e-9 * (phi_max_ - phi_min_);
    return phi >= phi_min_ - slack && phi <= phi_max_ + slack;
}

PropertyModel fit_property_model(const PropertySamples& samples, const MotionTask& task,
                                 int fit_degree, double motor_inertia) {
    if (fit_degree < 0) throw std::invalid_argument("fit_property_model: negative degree");
    if (static_cast<std::size_t>(fit_degree) >= samples.size())
        throw std::invalid_argument("fit_property_model: degree must be below the sample count");
    if (motor_inertia < 0.0)
        throw std::invalid_argument("fit_property_model: negative motor inertia");

    const double theta_lo = std::min(task.theta_a, task.theta_b);
    const double theta_hi = std::max(task.theta_a, task.theta_b);
    if (samples.theta.front() > theta_lo || samples.theta.back() < theta_hi)
        throw std::out_of_range("fit_property_model: samples do not cover the motion range");

    const ScaleFactors s = scale_factors(task);
    const std::size_t m = samples.size();
    const std::size_t cols = static_cast<std::size_t>(fit_degree) + 1;

    std::vector<double> phi(m);
    for (std::size_t i = 0; i < m; ++i) phi[i] = s.c * samples.theta[i] + s.d;
    const auto [phi_lo, phi_hi] = std::minmax(phi.front(), phi.back());

    // Chebyshev design matrix by the forward recurrence; the grid may spill
    // past [-1, 1] when the samples are wider than the move.
    Matrix design(m, cols);
    for (std::size_t i = 0; i < m; ++i) {
        double tkm1 = 1.0, tk = phi[i];
        design(i, 0) = 1.0;
        if (cols > 1) design(i, 1) = tk;
        for (std::size_t k = 2; k < cols; ++k) {
            const double tkp1 = 2.0 * phi[i] * tk - tkm1;
            design(i, k) = tkp1;
            tkm1 = tk;
            tk = tkp1;
        }
    }

    LeastSquaresFit j_fit = least_squares(design, samples.inertia);
    LeastSquaresFit tau_fit = least_squares(design, samples.load_torque);

    j_fit.x[0] += motor_inertia;
    ChebyshevSeries j_series{std::move(j_fit.x)};
    ChebyshevSeries tau_series{std::move(tau_fit.x)};

    // Max deviation at the samples, relative to the property's scale.
    double j_scale = 0.0, tau_scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        j_scale = std::max(j_scale, std::abs(samples.inertia[i]));
        tau_scale = std::max(tau_scale, std::abs(samples.load_torque[i]));
    }
    double j_dev = 0.0, tau_dev = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        j_dev = std::max(j_dev, std::abs(j_series.eval_unchecked(phi[i]) - motor_inertia -
                                         samples.inertia[i]));
        tau_dev = std::max(tau_dev, std::abs(tau_series.eval_unchecked(phi[i]) -
                                             samples.load_torque[i]));
    }
    const double j_residual = j_dev / j_scale;
    const double tau_residual = (tau_scale > 0.0) ? tau_dev / tau_scale : tau_dev;

    // Total inertia must stay physical over the fitted interval.
    for (int i = 0; i < 1001; ++i) {
        const double p = phi_lo + (phi_hi - phi_lo) * static_cast<double>(i) / 1000.0;
        if (!(j_series.eval_unchecked(p) > 0.0))
            throw std::runtime_error("fit_property_model: fitted inertia not positive everywhere");
    }

    return PropertyModel{std::move(j_series), std::move(tau_series), s,
                         phi_lo,              phi_hi,                j_residual,
                         tau_residual,        motor_inertia};
}

namespace {

double torque_from_rescaled_state(double phi, double dphi, double ddphi,
                                  const PropertyModel& model, const FrictionModel& friction) {
    const ScaleFactors& s = model.scale();
    const double theta_dot = dphi / (s.a * s.c);
    const double theta_ddot = ddphi / (s.a * s.a * s.c);
    return model.load_torque(phi) +
           0.5 * model.inertia_slope(phi) * (1.0 / s.e) * theta_dot * theta_dot +
           model.inertia(phi) * theta_ddot + friction.mu_v * theta_dot;
}

} // namespace

double motor_torque_rescaled(const MotionProfile& profile, const PropertyModel& model,
                             const FrictionModel& friction, double x) {
    if (std::abs(x) > 1.0) throw std::domain_error("motor_torque_rescaled: |x| > 1");
    double phi, dphi, ddphi;
    if (x == 1.0 || x == -1.0) {
        const int end = (x > 0.0) ? 1 : -1;
        phi = profile.phi().endpoint_value(0, end);
        dphi = profile.phi().endpoint_value(1, end);
        ddphi = profile.phi().endpoint_value(2, end);
    } else {
        phi = profile.phi().eval_unchecked(x);
        dphi = profile.phi_dot().eval_unchecked(x);
        ddphi = profile.phi_ddot().eval_unchecked(x);
    }
    return torque_from_rescaled_state(phi, dphi, ddphi, model, friction);
}

double motor_torque_physical(double theta, double theta_dot, double theta_ddot,
                             const PropertyModel& model, const FrictionModel& friction) {
    const ScaleFactors& s = model.scale();
    const double phi = s.c * theta + s.d;
    if (!model.in_fitted_range(phi))
        throw std::out_of_range("motor_torque_physical: position outside the fitted range");
    const double dj_dtheta = model.inertia_slope(phi) / s.e; // dJ/dtheta = (1/e) dJ/dphi
    return model.load_torque(phi) + model.inertia(phi) * theta_ddot +
           0.5 * dj_dtheta * theta_dot * theta_dot + friction.mu_v * theta_dot;
}

double motor_torque_trapezoid(const PropertyModel& model, const FrictionModel& friction,
                               double x) {
    const TrapezoidState s = trapezoid13_state(x);
    return torque_from_rescaled_state(s.phi, s.dphi, s.ddphi, model, friction);
}

double electrical_power(const MotorParams& motor, double tau_m, double theta_dot) {
    const double kt = motor.torque_const;
    return motor.resistance / (kt * kt) * tau_m * tau_m +
           motor.pole_pairs * motor.back_emf_const / kt * tau_m * theta_dot;
}

EnergyBreakdown energy_decomposition(const MotionProfile& profile, const PropertyModel& model,
                                     const MotorParams& motor, const FrictionModel& friction,
                                     int quadrature_nodes) {
    if (quadrature_nodes < 3)
        throw std::invalid_argument("energy_decomposition: too few quadrature nodes");
    const GaussLegendreRule rule = gauss_legendre(static_cast<std::size_t>(quadrature_nodes));
    const ScaleFactors& s = profile.scale();
    const double emf_ratio = motor.pole_pairs * motor.back_emf_const / motor.torque_const;
    const double loss_ratio = motor.resistance / (motor.torque_const * motor.torque_const);

    double e_k = 0.0, e_p = 0.0, e_l = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const double phi = profile.phi().eval_unchecked(x);
        const double theta_dot = profile.phi_dot().eval_unchecked(x) / (s.a * s.c);
        const double theta_ddot = profile.phi_ddot().eval_unchecked(x) / (s.a * s.a * s.c);

        const double tau_accel = model.inertia(phi) * theta_ddot;
        const double tau_var = 0.5 * model.inertia_slope(phi) / s.e * theta_dot * theta_dot;
        const double tau_load = model.load_torque(phi);
        const double tau_fric = friction.mu_v * theta_dot;
        const double tau_m = tau_load + tau_accel + tau_var + tau_fric;

        const double w_dt = rule.weights[i] * s.a; // dt = a dx
        e_k += w_dt * (tau_accel + tau_var) * theta_dot;
        e_p += w_dt * tau_load * theta_dot;
        e_l += w_dt * (loss_ratio * tau_m * tau_m + emf_ratio * tau_fric * theta_dot);
    }
    EnergyBreakdown out;
    out.kinetic = emf_ratio * e_k;
    out.potential = emf_ratio * e_p;
    out.loss = e_l;
    out.total = out.kinetic + out.potential + out.loss;
    return out;
}

double trapezoid13_rms_torque(const PropertyModel& model, const FrictionModel& friction,
                              int nodes_per_segment) {
    if (nodes_per_segment < 3)
        throw std::invalid_argument("trapezoid13_rms_torque: too few quadrature nodes");
    const GaussLegendreRule rule = gauss_legendre(static_cast<std::size_t>(nodes_per_segment));
    const double breaks[4] = {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0};
    double acc = 0.0;
    for (int seg = 0; seg < 3; ++seg) {
        const double mid = 0.5 * (breaks[seg] + breaks[seg + 1]);
        const double half = 0.5 * (breaks[seg + 1] - breaks[seg]);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = mid + half * rule.nodes[i];
            const double tau = motor_torque_trapezoid(model, friction, x);
            acc += half * rule.weights[i] * tau * tau;
        }
    }
    return std::sqrt(0.5 * acc);
}

} // namespace chebmotion
