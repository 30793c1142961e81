#pragma once

#include "chebmotion/identify.hpp"
#include "chebmotion/optimize.hpp"
#include "chebmotion/plant.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace chebmotion {

// Parse failure with the 1-based line it happened on (0 when the problem is
// not tied to a line).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line = 0);
    int line() const { return line_; }

private:
    int line_;
};

// --- CSV formats (headers are byte-exact, LF line endings) ---------------

// theta_rad,inertia_kgm2,load_torque_Nm
PropertySamples read_property_csv(const std::string& path);
void write_property_csv(const std::string& path, const PropertySamples& samples);

// time_s,position_rad,torque_Nm
MeasurementLog read_measurement_csv(const std::string& path);
void write_measurement_csv(const std::string& path, const MeasurementLog& log);

// degree,jerk_mode,solver,tau_rms_Nm,saving_pct,iterations,wall_time_s
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

// x,theta_rad,theta_dot_radps,theta_ddot_radps2,torque_Nm
void write_plot_csv(const std::string& path, const MotionProfile& profile,
                    const PropertyModel& model, const FrictionModel& friction,
                    std::size_t points = 501);

// --- Feedforward setpoint table -------------------------------------------

// time_s,position_rad,velocity_radps,acceleration_radps2,ff_torque_Nm
// Rows at t_a, t_a + dt, ...; when the period does not divide the move time
// a final row clamped to t_b is appended. Returns the number of rows.
std::size_t export_setpoints(const MotionProfile& profile, const PropertyModel& model,
                             const FrictionModel& friction, double sample_period,
                             const std::string& out_path);

// --- Key-value run configuration -------------------------------------------

// Plain "key = value" lines, '#' comments, unknown keys rejected. CLI flags
// override file values.
struct RunConfig {
    std::optional<double> theta_a_rad;
    std::optional<double> theta_b_rad;
    std::optional<double> t_a_s;
    std::optional<double> t_b_s;
    std::optional<int> degree;
    std::optional<bool> jerk_zero;
    std::optional<std::string> solver; // bfgs | ga | both
    std::optional<std::uint64_t> seed;
    std::optional<int> quad_nodes;
    std::optional<int> fit_degree;
    std::optional<double> mu_v;

    // Motor block, keys as in the motor data-sheet file.
    std::optional<double> motor_resistance;   // R_ohm
    std::optional<double> motor_torque_const; // kt_NmA
    std::optional<double> motor_back_emf;     // kv_VsRad
    std::optional<int> motor_pole_pairs;      // pole_pairs
    std::optional<double> motor_inertia;      // Jm_kgm2
    std::optional<double> motor_inductance;   // L_H

    // The motor is usable once the electrical triple is present.
    bool has_motor() const;
    MotorParams motor() const;
};

RunConfig read_run_config(const std::string& path);

// --- Profile document -------------------------------------------------------

// JSON profile document: task, full and free coefficient vectors, solver
// metadata and input provenance. Fixed key order and shortest-round-trip
// number formatting keep identical runs byte-identical.
struct ProfileMetadata {
    std::string solver; // "bfgs" | "ga"
    double tau_rms = 0.0;
    int iterations = 0;
    long objective_evals = 0;
    bool converged = false;
    std::uint64_t seed = 0;
    // provenance
    std::string properties_path;
    std::string properties_hash;
    std::map<std::string, std::string> config; // effective settings, as text
};

void write_profile_document(const std::string& path, const MotionProfile& profile,
                            const ProfileMetadata& metadata);

struct LoadedProfile {
    MotionProfile profile;
    ProfileMetadata metadata;
};

LoadedProfile read_profile_document(const std::string& path);

// FNV-1a, 64-bit, of a file's bytes; hex string. Provenance fingerprint,
// not a cryptographic hash.
std::string fnv1a64_file(const std::string& path);
std::string fnv1a64(std::string_view bytes);

} // namespace chebmotion
