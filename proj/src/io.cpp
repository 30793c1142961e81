#include "chebmotion/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace chebmotion {

using ordered_json = nlohmann::ordered_json;

ParseError::ParseError(const std::string& message, int line)
    : std::runtime_error(line > 0 ? message + " (line " + std::to_string(line) + ")" : message),
      line_(line) {}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: keep LF on every platform
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double_field(const std::string& field, int line_no) {
    try {
        std::size_t consumed = 0;
        const double v = std::stod(field, &consumed);
        while (consumed < field.size() &&
               (field[consumed] == ' ' || field[consumed] == '\r' || field[consumed] == '\t'))
            ++consumed;
        if (consumed != field.size()) throw ParseError("trailing characters in number", line_no);
        if (!std::isfinite(v)) throw ParseError("non-finite value", line_no);
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("not a number: '" + field + "'", line_no);
    } catch (const std::out_of_range&) {
        throw ParseError("number out of range: '" + field + "'", line_no);
    }
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

// Shared three-column numeric CSV reader.
std::array<std::vector<double>, 3> read_three_column_csv(const std::string& path,
                                                         const std::string& expected_header) {
    std::ifstream in = open_input(path);
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line)) throw ParseError("empty file", 1);
    ++line_no;
    if (strip_cr(line) != expected_header)
        throw ParseError("bad header, expected '" + expected_header + "'", line_no);

    std::array<std::vector<double>, 3> cols;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = strip_cr(line);
        if (row.empty()) continue;
        const std::vector<std::string> fields = split_csv_row(row);
        if (fields.size() != 3) throw ParseError("expected 3 fields", line_no);
        for (int c = 0; c < 3; ++c)
            cols[static_cast<std::size_t>(c)].push_back(parse_double_field(fields[static_cast<std::size_t>(c)], line_no));
    }
    return cols;
}

} // namespace

PropertySamples read_property_csv(const std::string& path) {
    auto cols = read_three_column_csv(path, "theta_rad,inertia_kgm2,load_torque_Nm");
    try {
        return PropertySamples{std::move(cols[0]), std::move(cols[1]), std::move(cols[2])};
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " in '" + path + "'");
    }
}

void write_property_csv(const std::string& path, const PropertySamples& samples) {
    std::ofstream out = open_output(path);
    out << "theta_rad,inertia_kgm2,load_torque_Nm\n";
    for (std::size_t i = 0; i < samples.size(); ++i)
        out << format_double(samples.theta[i]) << ',' << format_double(samples.inertia[i]) << ','
            << format_double(samples.load_torque[i]) << '\n';
}

MeasurementLog read_measurement_csv(const std::string& path) {
    auto cols = read_three_column_csv(path, "time_s,position_rad,torque_Nm");
    try {
        return MeasurementLog{std::move(cols[0]), std::move(cols[1]), std::move(cols[2])};
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " in '" + path + "'");
    }
}

void write_measurement_csv(const std::string& path, const MeasurementLog& log) {
    std::ofstream out = open_output(path);
    out << "time_s,position_rad,torque_Nm\n";
    for (std::size_t i = 0; i < log.size(); ++i)
        out << format_double(log.time[i]) << ',' << format_double(log.position[i]) << ','
            << format_double(log.torque[i]) << '\n';
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out = open_output(path);
    out << "degree,jerk_mode,solver,tau_rms_Nm,saving_pct,iterations,wall_time_s\n";
    for (const SweepRow& r : rows)
        out << r.degree << ',' << (r.jerk_zero ? "J0" : "JF") << ',' << r.solver << ','
            << format_double(r.tau_rms) << ',' << format_double(r.saving_pct) << ','
            << r.iterations << ',' << format_double(r.wall_time_s) << '\n';
}

void write_plot_csv(const std::string& path, const MotionProfile& profile,
                    const PropertyModel& model, const FrictionModel& friction,
                    std::size_t points) {
    if (points < 2) throw std::invalid_argument("write_plot_csv: need at least 2 points");
    std::ofstream out = open_output(path);
    out << "x,theta_rad,theta_dot_radps,theta_ddot_radps2,torque_Nm\n";
    for (std::size_t i = 0; i < points; ++i) {
        double x = -1.0 + 2.0 * static_cast<double>(i) / (static_cast<double>(points) - 1.0);
        x = std::clamp(x, -1.0, 1.0);
        const KinematicState k = profile.state(x);
        const double tau = motor_torque_rescaled(profile, model, friction, x);
        out << format_double(x) << ',' << format_double(k.theta) << ','
            << format_double(k.theta_dot) << ',' << format_double(k.theta_ddot) << ','
            << format_double(tau) << '\n';
    }
}

std::size_t export_setpoints(const MotionProfile& profile, const PropertyModel& model,
                             const FrictionModel& friction, double sample_period,
                             const std::string& out_path) {
    if (!(sample_period > 0.0))
        throw std::invalid_argument("export_setpoints: sample period must be positive");
    const MotionTask& task = profile.task();
    const ScaleFactors& s = profile.scale();
    const double duration = task.duration();
    if (duration / sample_period > 5e7)
        throw std::invalid_argument("export_setpoints: sample period yields an absurd row count");

    const long steps = static_cast<long>(std::floor(duration / sample_period + 1e-9));
    std::ofstream out = open_output(out_path);
    out << "time_s,position_rad,velocity_radps,acceleration_radps2,ff_torque_Nm\n";

    std::size_t rows = 0;
    const auto emit = [&](double t) {
        double x = (t - s.b) / s.a;
        if (x < -1.0 && x > -1.0 - 1e-9) x = -1.0;
        if (x > 1.0 && x < 1.0 + 1e-9) x = 1.0;
        const KinematicState k = profile.state(x);
        const double tau = motor_torque_rescaled(profile, model, friction, x);
        out << format_double(t) << ',' << format_double(k.theta) << ','
            << format_double(k.theta_dot) << ',' << format_double(k.theta_ddot) << ','
            << format_double(tau) << '\n';
        ++rows;
    };

    for (long i = 0; i <= steps; ++i) emit(task.t_a + static_cast<double>(i) * sample_period);
    const double t_last = task.t_a + static_cast<double>(steps) * sample_period;
    if (task.t_b - t_last > 1e-9 * duration) emit(task.t_b);
    return rows;
}

namespace {

bool parse_bool(const std::string& value, int line_no) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ParseError("expected a boolean, got '" + value + "'", line_no);
}

int parse_int(const std::string& value, int line_no) {
    try {
        std::size_t consumed = 0;
        const int v = std::stoi(value, &consumed);
        if (consumed != value.size()) throw ParseError("trailing characters in integer", line_no);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + value + "'", line_no);
    }
}

std::uint64_t parse_u64(const std::string& value, int line_no) {
    try {
        std::size_t consumed = 0;
        const unsigned long long v = std::stoull(value, &consumed);
        if (consumed != value.size()) throw ParseError("trailing characters in integer", line_no);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected an unsigned integer, got '" + value + "'", line_no);
    }
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return {};
    return s.substr(a, b - a + 1);
}

} // namespace

bool RunConfig::has_motor() const {
    return motor_resistance && motor_torque_const && motor_back_emf && motor_pole_pairs;
}

MotorParams RunConfig::motor() const {
    if (!has_motor()) throw std::runtime_error("RunConfig: motor parameters are incomplete");
    return MotorParams{*motor_resistance,          *motor_torque_const,
                       *motor_back_emf,            *motor_pole_pairs,
                       motor_inertia.value_or(0.0), motor_inductance.value_or(0.0)};
}

RunConfig read_run_config(const std::string& path) {
    std::ifstream in = open_input(path);
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line.substr(0, line.find('#')));
        if (text.empty()) continue;
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (value.empty()) throw ParseError("missing value for '" + key + "'", line_no);

        if (key == "theta_a_rad") cfg.theta_a_rad = parse_double_field(value, line_no);
        else if (key == "theta_b_rad") cfg.theta_b_rad = parse_double_field(value, line_no);
        else if (key == "t_a_s") cfg.t_a_s = parse_double_field(value, line_no);
        else if (key == "t_b_s") cfg.t_b_s = parse_double_field(value, line_no);
        else if (key == "degree") cfg.degree = parse_int(value, line_no);
        else if (key == "jerk_zero") cfg.jerk_zero = parse_bool(value, line_no);
        else if (key == "solver") {
            if (value != "bfgs" && value != "ga" && value != "both")
                throw ParseError("solver must be bfgs, ga or both", line_no);
            cfg.solver = value;
        } else if (key == "seed") cfg.seed = parse_u64(value, line_no);
        else if (key == "quad_nodes") cfg.quad_nodes = parse_int(value, line_no);
        else if (key == "fit_degree") cfg.fit_degree = parse_int(value, line_no);
        else if (key == "mu_v_NmsRad") cfg.mu_v = parse_double_field(value, line_no);
        else if (key == "R_ohm") cfg.motor_resistance = parse_double_field(value, line_no);
        else if (key == "kt_NmA") cfg.motor_torque_const = parse_double_field(value, line_no);
        else if (key == "kv_VsRad") cfg.motor_back_emf = parse_double_field(value, line_no);
        else if (key == "pole_pairs") cfg.motor_pole_pairs = parse_int(value, line_no);
        else if (key == "Jm_kgm2") cfg.motor_inertia = parse_double_field(value, line_no);
        else if (key == "L_H") cfg.motor_inductance = parse_double_field(value, line_no);
        else throw ParseError("unknown key '" + key + "'", line_no);
    }
    return cfg;
}

void write_profile_document(const std::string& path, const MotionProfile& profile,
                            const ProfileMetadata& metadata) {
    const MotionTask& task = profile.task();
    const auto [phi_lo, phi_hi] = profile.phi_range();

    ordered_json doc;
    doc["schema"] = "chebmotion/profile/v1";
    doc["task"] = {{"theta_a_rad", task.theta_a}, {"theta_b_rad", task.theta_b},
                   {"t_a_s", task.t_a},           {"t_b_s", task.t_b},
                   {"jerk_zero", task.jerk_zero}, {"degree", task.degree}};
    doc["coefficients"] = std::vector<double>(profile.phi().coeffs().begin(),
                                              profile.phi().coeffs().end());
    doc["free_coefficients"] = std::vector<double>(profile.free_coeffs().begin(),
                                                   profile.free_coeffs().end());
    doc["phi_range"] = {{"min", phi_lo}, {"max", phi_hi}};
    doc["solver"] = {{"name", metadata.solver},
                     {"tau_rms_Nm", metadata.tau_rms},
                     {"iterations", metadata.iterations},
                     {"objective_evals", metadata.objective_evals},
                     {"converged", metadata.converged},
                     {"seed", metadata.seed}};
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : metadata.config) cfg[k] = v;
    doc["provenance"] = {{"properties_path", metadata.properties_path},
                         {"properties_fnv1a64", metadata.properties_hash},
                         {"config", cfg}};

    std::ofstream out = open_output(path);
    out << doc.dump(2) << '\n';
}

LoadedProfile read_profile_document(const std::string& path) {
    std::ifstream in = open_input(path);
    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid profile document: ") + e.what());
    }
    try {
        if (doc.at("schema").get<std::string>() != "chebmotion/profile/v1")
            throw ParseError("unsupported profile schema");
        const auto& t = doc.at("task");
        MotionTask task{t.at("theta_a_rad").get<double>(), t.at("theta_b_rad").get<double>(),
                        t.at("t_a_s").get<double>(),       t.at("t_b_s").get<double>(),
                        t.at("jerk_zero").get<bool>(),     t.at("degree").get<int>()};
        const auto free_coeffs = doc.at("free_coefficients").get<std::vector<double>>();
        const auto stored = doc.at("coefficients").get<std::vector<double>>();

        MotionProfile profile = eliminate_constraints(free_coeffs, task);
        const auto rebuilt = profile.phi().coeffs();
        if (stored.size() != rebuilt.size())
            throw ParseError("profile document: coefficient count mismatch");
        for (std::size_t i = 0; i < stored.size(); ++i)
            if (std::abs(stored[i] - rebuilt[i]) > 1e-9)
                throw ParseError("profile document: coefficients do not match the task");

        ProfileMetadata meta;
        const auto& s = doc.at("solver");
        meta.solver = s.at("name").get<std::string>();
        meta.tau_rms = s.at("tau_rms_Nm").get<double>();
        meta.iterations = s.at("iterations").get<int>();
        meta.objective_evals = s.at("objective_evals").get<long>();
        meta.converged = s.at("converged").get<bool>();
        meta.seed = s.at("seed").get<std::uint64_t>();
        const auto& prov = doc.at("provenance");
        meta.properties_path = prov.at("properties_path").get<std::string>();
        meta.properties_hash = prov.at("properties_fnv1a64").get<std::string>();
        for (const auto& [k, v] : prov.at("config").items())
            meta.config[k] = v.get<std::string>();
        return LoadedProfile{std::move(profile), std::move(meta)};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid profile document: ") + e.what());
    }
}

std::string fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64(ss.str());
}

} // namespace chebmotion
