#include "chebmotion/identify.hpp"

#include "chebmotion/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace chebmotion {

MeasurementLog::MeasurementLog(std::vector<double> time_, std::vector<double> position_,
                               std::vector<double> torque_)
    : time(std::move(time_)), position(std::move(position_)), torque(std::move(torque_)) {
    if (time.size() != position.size() || time.size() != torque.size())
        throw std::invalid_argument("MeasurementLog: column lengths differ");
    if (time.size() < 20) throw std::invalid_argument("MeasurementLog: need at least 20 samples");
    for (std::size_t i = 0; i < time.size(); ++i)
        if (!std::isfinite(time[i]) || !std::isfinite(position[i]) || !std::isfinite(torque[i]))
            throw std::invalid_argument("MeasurementLog: non-finite value");
    const double step = (time.back() - time.front()) / static_cast<double>(time.size() - 1);
    if (!(step > 0.0)) throw std::invalid_argument("MeasurementLog: time must increase");
    for (std::size_t i = 1; i < time.size(); ++i)
        if (std::abs(time[i] - time[i - 1] - step) > 1e-9)
            throw std::invalid_argument("MeasurementLog: sampling must be uniform");
}

PositionPolynomial::PositionPolynomial(std::vector<double> scaled_coeffs, double t_scale,
                                       double t_center, double residual_rms)
    : scaled_coeffs_(std::move(scaled_coeffs)), t_scale_(t_scale), t_center_(t_center),
      residual_rms_(residual_rms) {}

namespace {

double horner(const std::vector<double>& c, double s) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * s + c[i];
    return v;
}

std::vector<double> monomial_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
    return d;
}

} // namespace

double PositionPolynomial::value(double t) const {
    return horner(scaled_coeffs_, (t - t_center_) / t_scale_);
}

double PositionPolynomial::velocity(double t) const {
    const double s = (t - t_center_) / t_scale_;
    return horner(monomial_derivative(scaled_coeffs_), s) / t_scale_;
}

double PositionPolynomial::acceleration(double t) const {
    const double s = (t - t_center_) / t_scale_;
    return horner(monomial_derivative(monomial_derivative(scaled_coeffs_)), s) /
           (t_scale_ * t_scale_);
}

std::vector<double> PositionPolynomial::monomial_coeffs() const {
    // Substitute s = (t - t_center)/t_scale: scale by t_scale^-i, then
    // Taylor-shift by -t_center (repeated Horner, in place).
    const std::size_t n = scaled_coeffs_.size();
    std::vector<double> c(n);
    double pow = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = scaled_coeffs_[i] * pow;
        pow /= t_scale_;
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j >= i + 1; --j) c[j - 1] -= t_center_ * c[j];
    return c;
}

PositionPolynomial fit_position_polynomial(const MeasurementLog& log, int degree) {
    if (degree < 1) throw std::invalid_argument("fit_position_polynomial: degree must be >= 1");
    if (static_cast<std::size_t>(degree) >= log.size())
        throw std::invalid_argument("fit_position_polynomial: degree must be below sample count");

    const double t0 = log.time.front();
    const double t1 = log.time.back();
    const double t_center = 0.5 * (t0 + t1);
    const double t_scale = 0.5 * (t1 - t0);

    const std::size_t m = log.size();
    const std::size_t cols = static_cast<std::size_t>(degree) + 1;
    Matrix design(m, cols);
    for (std::size_t i = 0; i < m; ++i) {
        const double s = (log.time[i] - t_center) / t_scale;
        double p = 1.0;
        for (std::size_t j = 0; j < cols; ++j) {
            design(i, j) = p;
            p *= s;
        }
    }
    const LeastSquaresFit fit = least_squares(design, log.position);
    const double rms = fit.residual_norm / std::sqrt(static_cast<double>(m));
    return PositionPolynomial{fit.x, t_scale, t_center, rms};
}

FrictionFit identify_friction(const MeasurementLog& log, const PropertyModel& model,
                              int position_fit_degree) {
    const PositionPolynomial theta_p = fit_position_polynomial(log, position_fit_degree);
    const FrictionModel no_friction{};

    const std::size_t m = log.size();
    double num = 0.0, den = 0.0, res_before = 0.0;
    std::vector<double> residual(m), speed(m);
    double speed_scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double t = log.time[i];
        const double theta = theta_p.value(t);
        const double theta_dot = theta_p.velocity(t);
        const double theta_ddot = theta_p.acceleration(t);
        const double tau_model = motor_torque_physical(theta, theta_dot, theta_ddot, model,
                                                       no_friction);
        residual[i] = log.torque[i] - tau_model;
        speed[i] = theta_dot;
        speed_scale = std::max(speed_scale, std::abs(theta_dot));
        num += residual[i] * theta_dot;
        den += theta_dot * theta_dot;
        res_before += residual[i] * residual[i];
    }

    // Identifiability: the normal-equation denominator must carry real
    // speed content, not just numerical dust.
    const double span = std::abs(log.position.back() - log.position.front());
    const double duration = log.time.back() - log.time.front();
    const double speed_ref = std::max(span / duration, speed_scale);
    if (den <= 1e-20 || den <= 1e-14 * static_cast<double>(m) * speed_ref * speed_ref)
        throw std::runtime_error("identify_friction: no usable speed content (unidentifiable)");

    // The physical coefficient is nonnegative; a tiny negative estimate is
    // noise and collapses to zero.
    const double mu_hat = std::max(0.0, num / den);
    double res_after = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = residual[i] - mu_hat * speed[i];
        res_after += r * r;
    }

    return FrictionFit{FrictionModel{mu_hat}, std::sqrt(res_before), std::sqrt(res_after),
                       theta_p.residual_rms()};
}

} // namespace chebmotion
