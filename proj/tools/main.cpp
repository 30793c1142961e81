#include "chebmotion/io.hpp"
#include "chebmotion/kernels.hpp"
#include "chebmotion/synthetic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

// chebmotion: energy-optimal rest-to-rest motion profiles for single-axis
// servo mechanisms with position-dependent inertia and load torque.
//
// Subcommands: synth, identify, optimize, compare, export. All angle flags
// are radians unless --degrees is given; config files are always radians.

namespace {

using namespace chebmotion;

constexpr double kDegToRad = std::numbers::pi / 180.0;

struct CommonFlags {
    std::string config_path;
    std::string motor_path;
    bool angles_in_degrees = false;
};

RunConfig merged_config(const CommonFlags& common) {
    RunConfig cfg;
    if (!common.config_path.empty()) cfg = read_run_config(common.config_path);
    if (!common.motor_path.empty()) {
        const RunConfig motor_cfg = read_run_config(common.motor_path);
        if (motor_cfg.motor_resistance) cfg.motor_resistance = motor_cfg.motor_resistance;
        if (motor_cfg.motor_torque_const) cfg.motor_torque_const = motor_cfg.motor_torque_const;
        if (motor_cfg.motor_back_emf) cfg.motor_back_emf = motor_cfg.motor_back_emf;
        if (motor_cfg.motor_pole_pairs) cfg.motor_pole_pairs = motor_cfg.motor_pole_pairs;
        if (motor_cfg.motor_inertia) cfg.motor_inertia = motor_cfg.motor_inertia;
        if (motor_cfg.motor_inductance) cfg.motor_inductance = motor_cfg.motor_inductance;
    }
    return cfg;
}

PropertySamples ingest_properties(const std::string& path) {
    PropertySamples samples = read_property_csv(path);
    std::printf("properties: %zu samples, theta in [%.6g, %.6g] rad, J in [%.6g, %.6g] kg m^2\n",
                samples.size(), samples.theta.front(), samples.theta.back(),
                *std::min_element(samples.inertia.begin(), samples.inertia.end()),
                *std::max_element(samples.inertia.begin(), samples.inertia.end()));
    return samples;
}

std::map<std::string, std::string> effective_config_map(const MotionTask& task, int fit_degree,
                                                        double mu_v, int quad_nodes,
                                                        const std::string& solver,
                                                        std::uint64_t seed, double motor_inertia) {
    char buf[64];
    std::map<std::string, std::string> m;
    const auto put = [&](const char* key, double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        m[key] = buf;
    };
    put("theta_a_rad", task.theta_a);
    put("theta_b_rad", task.theta_b);
    put("t_a_s", task.t_a);
    put("t_b_s", task.t_b);
    m["degree"] = std::to_string(task.degree);
    m["jerk_zero"] = task.jerk_zero ? "true" : "false";
    m["fit_degree"] = std::to_string(fit_degree);
    put("mu_v_NmsRad", mu_v);
    m["quad_nodes"] = std::to_string(quad_nodes);
    m["solver"] = solver;
    m["seed"] = std::to_string(seed);
    put("Jm_kgm2", motor_inertia);
    return m;
}

void print_result(const char* label, const SolverResult& r, double ref_rms) {
    std::printf("%s: tau_rms = %.6f Nm (%+.1f%% vs reference), iterations = %d, "
                "evals = %ld, wall = %.3f s, converged = %s\n",
                label, r.tau_rms, (r.tau_rms - ref_rms) / ref_rms * 100.0, r.iterations,
                r.objective_evals, r.wall_time_s, r.converged ? "yes" : "no");
}

int cmd_synth(const std::string& mechanism, double j0, const SliderCrankParams& sc,
              double theta_min, double theta_max, int samples, bool degrees,
              const std::string& out) {
    if (degrees) {
        theta_min *= kDegToRad;
        theta_max *= kDegToRad;
    }
    SyntheticMechanism mech = (mechanism == "constant")
                                  ? SyntheticMechanism::constant(j0)
                                  : SyntheticMechanism::slider_crank(sc);
    const PropertySamples s = mech.sample(theta_min, theta_max, samples);
    write_property_csv(out, s);
    std::printf("synth: wrote %zu samples (%s) to %s\n", s.size(), mechanism.c_str(), out.c_str());
    return 0;
}

struct TaskFlags {
    double theta_a = 0.0;
    double theta_b = 0.0;
    double t_a = 0.0;
    double dt = 0.0;
    int degree = 0;
    bool jerk_zero = false;
};

MotionTask build_task(const TaskFlags& flags, const RunConfig& cfg, bool degrees,
                      bool theta_a_set, bool theta_b_set, bool dt_set, bool degree_set,
                      bool jerk_set) {
    const double conv = degrees ? kDegToRad : 1.0;
    double theta_a = theta_a_set ? flags.theta_a * conv : cfg.theta_a_rad.value_or(0.0);
    double theta_b;
    if (theta_b_set) theta_b = flags.theta_b * conv;
    else if (cfg.theta_b_rad) theta_b = *cfg.theta_b_rad;
    else throw std::invalid_argument("missing end position (--theta-b or config theta_b_rad)");

    double t_a = flags.t_a;
    double t_b;
    if (dt_set) t_b = t_a + flags.dt;
    else if (cfg.t_b_s) {
        t_a = cfg.t_a_s.value_or(0.0);
        t_b = *cfg.t_b_s;
    } else throw std::invalid_argument("missing motion time (--dt or config t_b_s)");

    const bool jerk_zero = jerk_set ? flags.jerk_zero : cfg.jerk_zero.value_or(false);
    const int degree = degree_set ? flags.degree : cfg.degree.value_or(jerk_zero ? 9 : 7);
    return MotionTask{theta_a, theta_b, t_a, t_b, jerk_zero, degree};
}

int cmd_optimize(const TaskFlags& task_flags, const CommonFlags& common,
                 const std::string& properties_path, const std::string& solver_flag,
                 std::uint64_t seed, int quad_nodes, int fit_degree, double mu_v,
                 const std::string& out, const std::string& plot_out, const CLI::App* cmd) {
    const RunConfig cfg = merged_config(common);
    const auto set = [&](const char* name) { return cmd->count(name) > 0; };

    const MotionTask task = build_task(task_flags, cfg, common.angles_in_degrees,
                                       set("--theta-a"), set("--theta-b"), set("--dt"),
                                       set("--degree"), set("--jerk-zero"));
    const std::string solver = set("--solver") ? solver_flag : cfg.solver.value_or("bfgs");
    if (solver != "bfgs" && solver != "ga" && solver != "both")
        throw std::invalid_argument("solver must be bfgs, ga or both");
    if (!set("--seed") && cfg.seed) seed = *cfg.seed;
    if (!set("--quad-nodes") && cfg.quad_nodes) quad_nodes = *cfg.quad_nodes;
    if (!set("--fit-degree") && cfg.fit_degree) fit_degree = *cfg.fit_degree;
    if (!set("--mu-v") && cfg.mu_v) mu_v = *cfg.mu_v;

    const PropertySamples samples = ingest_properties(properties_path);
    const double motor_inertia = cfg.motor_inertia.value_or(0.0);
    const PropertyModel model = fit_property_model(samples, task, fit_degree, motor_inertia);
    std::printf("property fit: degree %d, residual J %.3g, tau_l %.3g\n", fit_degree,
                model.inertia_fit_residual(), model.load_torque_fit_residual());

    const FrictionModel friction{mu_v};
    std::optional<MotorParams> motor;
    if (cfg.has_motor()) motor = cfg.motor();
    const OptimizationContext ctx{task, model, friction, motor, quad_nodes};

    // Reference for the savings column.
    const MotionTask ref_task{task.theta_a, task.theta_b, task.t_a, task.t_b, task.jerk_zero,
                              task.jerk_zero ? 7 : 5};
    const OptimizationContext ref_ctx{ref_task, model, friction, motor, quad_nodes};
    const double ref_rms = rms_objective({}, ref_ctx);
    std::printf("reference %s: tau_rms = %.6f Nm\n", task.jerk_zero ? "poly7J0" : "poly5",
                ref_rms);

    std::vector<SolverResult> results;
    if (solver == "bfgs" || solver == "both") {
        results.push_back(solve_bfgs(ctx));
        print_result("bfgs", results.back(), ref_rms);
    }
    if (solver == "ga" || solver == "both") {
        results.push_back(solve_ga(ctx, seed));
        print_result("ga", results.back(), ref_rms);
    }

    const SolverResult& best = *std::min_element(
        results.begin(), results.end(),
        [](const SolverResult& a, const SolverResult& b) { return a.tau_rms < b.tau_rms; });

    const auto [phi_lo, phi_hi] = best.profile.phi_range();
    std::printf("phi range over the move: [%.6f, %.6f]\n", phi_lo, phi_hi);

    if (motor) {
        const EnergyBreakdown e =
            energy_decomposition(best.profile, model, *motor, friction, quad_nodes);
        std::printf("energy: E_k = %.3g J, E_p = %.6g J, E_l = %.6g J, total = %.6g J\n",
                    e.kinetic, e.potential, e.loss, e.total);
    }

    if (!out.empty()) {
        ProfileMetadata meta;
        meta.solver = to_string(best.solver);
        meta.tau_rms = best.tau_rms;
        meta.iterations = best.iterations;
        meta.objective_evals = best.objective_evals;
        meta.converged = best.converged;
        meta.seed = seed;
        meta.properties_path = properties_path;
        meta.properties_hash = fnv1a64_file(properties_path);
        meta.config = effective_config_map(task, fit_degree, mu_v, quad_nodes, solver, seed,
                                           motor_inertia);
        write_profile_document(out, best.profile, meta);
        std::printf("profile written to %s\n", out.c_str());
    }
    if (!plot_out.empty()) {
        write_plot_csv(plot_out, best.profile, model, friction);
        std::printf("plot data written to %s\n", plot_out.c_str());
    }
    return 0;
}

int cmd_compare(const TaskFlags& task_flags, const CommonFlags& common,
                const std::string& properties_path, const std::string& solver_flag,
                const std::string& degrees_list, const std::string& jerk_mode,
                std::uint64_t seed, int quad_nodes, int fit_degree, double mu_v,
                const std::string& out, const CLI::App* cmd) {
    const RunConfig cfg = merged_config(common);
    const auto set = [&](const char* name) { return cmd->count(name) > 0; };

    TaskFlags base_flags = task_flags;
    base_flags.degree = 13; // placeholder; the sweep sets the real degrees
    const std::string solver = set("--solver") ? solver_flag : cfg.solver.value_or("both");
    if (!set("--seed") && cfg.seed) seed = *cfg.seed;
    if (!set("--quad-nodes") && cfg.quad_nodes) quad_nodes = *cfg.quad_nodes;
    if (!set("--fit-degree") && cfg.fit_degree) fit_degree = *cfg.fit_degree;
    if (!set("--mu-v") && cfg.mu_v) mu_v = *cfg.mu_v;

    std::vector<int> degrees;
    {
        std::stringstream ss(degrees_list);
        std::string item;
        while (std::getline(ss, item, ',')) degrees.push_back(std::stoi(item));
        if (degrees.empty()) throw std::invalid_argument("empty degree list");
    }

    const SolverChoice choice = solver == "bfgs"  ? SolverChoice::bfgs
                                : solver == "ga"  ? SolverChoice::ga
                                                  : SolverChoice::both;

    std::vector<bool> jerk_modes;
    if (jerk_mode == "jf") jerk_modes = {false};
    else if (jerk_mode == "j0") jerk_modes = {true};
    else if (jerk_mode == "both") jerk_modes = {false, true};
    else throw std::invalid_argument("jerk mode must be jf, j0 or both");

    const PropertySamples samples = ingest_properties(properties_path);
    std::vector<SweepRow> all_rows;

    for (bool jerk_zero : jerk_modes) {
        TaskFlags f = base_flags;
        f.jerk_zero = jerk_zero;
        f.degree = jerk_zero ? 9 : 7;
        const MotionTask task = build_task(f, cfg, common.angles_in_degrees, set("--theta-a"),
                                           set("--theta-b"), set("--dt"), true, true);
        const PropertyModel model =
            fit_property_model(samples, task, fit_degree, cfg.motor_inertia.value_or(0.0));
        const FrictionModel friction{mu_v};
        std::optional<MotorParams> motor;
        if (cfg.has_motor()) motor = cfg.motor();
        const OptimizationContext ctx{task, model, friction, motor, quad_nodes};

        std::vector<int> valid_degrees;
        for (int d : degrees)
            if (d >= (jerk_zero ? 7 : 5)) valid_degrees.push_back(d);

        std::vector<SweepRow> rows = degree_sweep(ctx, valid_degrees, choice, seed);

        if (!jerk_zero) {
            // Conventional trapezoidal 1/3 profile for comparison.
            SweepRow trap;
            trap.degree = 0;
            trap.jerk_zero = false;
            trap.solver = "trap";
            trap.tau_rms = trapezoid13_rms_torque(model, friction);
            trap.saving_pct = (rows.front().tau_rms - trap.tau_rms) / rows.front().tau_rms * 100.0;
            rows.insert(rows.begin() + 1, trap);
        }

        std::printf("\n%s sweep (reference %s):\n", jerk_zero ? "J0" : "JF",
                    jerk_zero ? "poly7J0" : "poly5");
        std::printf("%8s %6s %8s %14s %12s %10s %12s", "degree", "jerk", "solver", "tau_rms_Nm",
                    "saving_pct", "iters", "wall_s");
        if (motor) std::printf(" %14s", "E_l_J");
        std::printf("\n");
        for (const SweepRow& r : rows) {
            std::printf("%8d %6s %8s %14.6f %12.2f %10d %12.4f", r.degree,
                        r.jerk_zero ? "J0" : "JF", r.solver.c_str(), r.tau_rms, r.saving_pct,
                        r.iterations, r.wall_time_s);
            if (motor) {
                // Loss energy from the RMS identity; with zero friction this
                // equals the quadrature decomposition exactly.
                const double e_l = motor->resistance * task.duration() /
                                   (motor->torque_const * motor->torque_const) * r.tau_rms *
                                   r.tau_rms;
                std::printf(" %14.6f", e_l);
            }
            std::printf("\n");
        }
        all_rows.insert(all_rows.end(), rows.begin(), rows.end());
    }

    if (!out.empty()) {
        write_sweep_csv(out, all_rows);
        std::printf("\nsweep table written to %s\n", out.c_str());
    }
    return 0;
}

int cmd_identify(const CommonFlags& common, const std::string& properties_path,
                 const std::string& log_path, double theta_a, double theta_b, int fit_degree,
                 int property_degree, const std::string& out, const CLI::App* cmd) {
    const RunConfig cfg = merged_config(common);
    const auto set = [&](const char* name) { return cmd->count(name) > 0; };

    const double conv = common.angles_in_degrees ? kDegToRad : 1.0;
    if (!set("--theta-a") && cfg.theta_a_rad) theta_a = *cfg.theta_a_rad;
    else theta_a *= conv;
    if (set("--theta-b")) theta_b *= conv;
    else if (cfg.theta_b_rad) theta_b = *cfg.theta_b_rad;
    else throw std::invalid_argument("missing end position (--theta-b or config theta_b_rad)");
    if (!set("--property-degree") && cfg.fit_degree) property_degree = *cfg.fit_degree;

    const PropertySamples samples = ingest_properties(properties_path);
    const MeasurementLog log = read_measurement_csv(log_path);
    std::printf("log: %zu samples, t in [%.6g, %.6g] s\n", log.size(), log.time.front(),
                log.time.back());

    const MotionTask task{theta_a, theta_b, log.time.front(), log.time.back(), false, 7};
    const PropertyModel model =
        fit_property_model(samples, task, property_degree, cfg.motor_inertia.value_or(0.0));

    const FrictionFit fit = identify_friction(log, model, fit_degree);
    std::printf("identified mu_v = %.10g Nms/rad\n", fit.friction.mu_v);
    std::printf("torque residual: %.6g Nm before, %.6g Nm after; position fit rms %.3g rad\n",
                fit.residual_before, fit.residual_after, fit.position_fit_residual_rms);

    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + out + "'");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", fit.friction.mu_v);
        f << "mu_v_NmsRad = " << buf << "\n";
        std::printf("friction config written to %s\n", out.c_str());
    }
    return 0;
}

int cmd_export(const CommonFlags& common, const std::string& profile_path,
               const std::string& properties_path, double sample_period, double mu_v,
               int fit_degree, const std::string& out, const CLI::App* cmd) {
    const RunConfig cfg = merged_config(common);
    const auto set = [&](const char* name) { return cmd->count(name) > 0; };

    const LoadedProfile loaded = read_profile_document(profile_path);
    const MotionTask& task = loaded.profile.task();

    if (!set("--fit-degree")) {
        if (cfg.fit_degree) fit_degree = *cfg.fit_degree;
        else if (auto it = loaded.metadata.config.find("fit_degree");
                 it != loaded.metadata.config.end())
            fit_degree = std::stoi(it->second);
    }
    if (!set("--mu-v")) {
        if (cfg.mu_v) mu_v = *cfg.mu_v;
        else if (auto it = loaded.metadata.config.find("mu_v_NmsRad");
                 it != loaded.metadata.config.end())
            mu_v = std::stod(it->second);
    }
    double motor_inertia = cfg.motor_inertia.value_or(0.0);
    if (!cfg.motor_inertia) {
        if (auto it = loaded.metadata.config.find("Jm_kgm2"); it != loaded.metadata.config.end())
            motor_inertia = std::stod(it->second);
    }

    const PropertySamples samples = ingest_properties(properties_path);
    if (!loaded.metadata.properties_hash.empty() &&
        fnv1a64_file(properties_path) != loaded.metadata.properties_hash)
        std::fprintf(stderr, "warning: property file hash differs from the profile document\n");

    const PropertyModel model = fit_property_model(samples, task, fit_degree, motor_inertia);
    const FrictionModel friction{mu_v};

    const std::size_t rows = export_setpoints(loaded.profile, model, friction, sample_period, out);
    std::printf("export: %zu setpoints at %.6g s to %s\n", rows, sample_period, out.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-optimal rest-to-rest motion profiles on a Chebyshev basis"};
    app.require_subcommand(1);

    std::string kernel_name;
    app.add_option("--kernel", kernel_name, "Force a compute kernel (scalar, avx2, neon)");

    // --- synth ---
    auto* synth = app.add_subcommand("synth", "Emit property samples for a synthetic mechanism");
    std::string mechanism = "slider-crank";
    double j0 = 0.01;
    SliderCrankParams sc;
    double theta_min = 0.0, theta_max = 3.2;
    int samples = 200;
    bool synth_degrees = false;
    std::string synth_out = "properties.csv";
    synth->add_option("--mechanism", mechanism, "constant | slider-crank")
        ->check(CLI::IsMember({"constant", "slider-crank"}));
    synth->add_option("--j0", j0, "Inertia of the constant mechanism [kg m^2]");
    synth->add_option("--crank-inertia", sc.crank_inertia, "Crank inertia [kg m^2]");
    synth->add_option("--slider-mass", sc.slider_mass, "Slider mass [kg]");
    synth->add_option("--crank-radius", sc.crank_radius, "Crank radius [m]");
    synth->add_option("--rod-length", sc.rod_length, "Connecting rod length [m]");
    synth->add_option("--load-force", sc.load_force, "Process force on the slider [N]");
    synth->add_option("--theta-min", theta_min, "Grid start [rad]");
    synth->add_option("--theta-max", theta_max, "Grid end [rad]");
    synth->add_option("--samples", samples, "Number of grid samples");
    synth->add_flag("--degrees", synth_degrees, "Angles are given in degrees");
    synth->add_option("--out", synth_out, "Output property CSV");

    // Shared task/solver flags for optimize and compare.
    const auto add_common = [](CLI::App* cmd, CommonFlags& common) {
        cmd->add_option("--config", common.config_path, "Run configuration file");
        cmd->add_option("--motor", common.motor_path, "Motor parameter file");
        cmd->add_flag("--degrees", common.angles_in_degrees, "Angles are given in degrees");
    };

    // --- optimize ---
    auto* optimize = app.add_subcommand("optimize", "Optimize a motion profile");
    CommonFlags opt_common;
    TaskFlags opt_task;
    std::string opt_properties, opt_solver = "bfgs", opt_out, opt_plot;
    std::uint64_t opt_seed = 0;
    int opt_quad_nodes = 201, opt_fit_degree = 20;
    double opt_mu_v = 0.0;
    optimize->add_option("--properties", opt_properties, "Property CSV")->required();
    optimize->add_option("--theta-a", opt_task.theta_a, "Start position [rad]");
    optimize->add_option("--theta-b", opt_task.theta_b, "End position [rad]");
    optimize->add_option("--t-a", opt_task.t_a, "Start time [s]");
    optimize->add_option("--dt", opt_task.dt, "Motion time [s]");
    optimize->add_option("--degree", opt_task.degree, "Profile degree n");
    optimize->add_flag("--jerk-zero", opt_task.jerk_zero, "Zero-jerk boundary constraints");
    optimize->add_option("--solver", opt_solver, "bfgs | ga | both")
        ->check(CLI::IsMember({"bfgs", "ga", "both"}));
    optimize->add_option("--seed", opt_seed, "GA random seed");
    optimize->add_option("--quad-nodes", opt_quad_nodes, "Quadrature nodes (odd, >= 33)");
    optimize->add_option("--fit-degree", opt_fit_degree, "Property fit degree");
    optimize->add_option("--mu-v", opt_mu_v, "Viscous friction [Nms/rad]");
    optimize->add_option("--out", opt_out, "Profile document output path");
    optimize->add_option("--plot-data", opt_plot, "Kinematics/torque CSV for plotting");
    add_common(optimize, opt_common);

    // --- compare ---
    auto* compare = app.add_subcommand("compare", "Degree sweep with reference comparison");
    CommonFlags cmp_common;
    TaskFlags cmp_task;
    std::string cmp_properties, cmp_solver = "both", cmp_out;
    std::string cmp_degrees = "7,9,11,13", cmp_jerk = "jf";
    std::uint64_t cmp_seed = 0;
    int cmp_quad_nodes = 201, cmp_fit_degree = 20;
    double cmp_mu_v = 0.0;
    compare->add_option("--properties", cmp_properties, "Property CSV")->required();
    compare->add_option("--theta-a", cmp_task.theta_a, "Start position [rad]");
    compare->add_option("--theta-b", cmp_task.theta_b, "End position [rad]");
    compare->add_option("--t-a", cmp_task.t_a, "Start time [s]");
    compare->add_option("--dt", cmp_task.dt, "Motion time [s]");
    compare->add_option("--degrees-list", cmp_degrees, "Comma-separated profile degrees");
    compare->add_option("--jerk-mode", cmp_jerk, "jf | j0 | both")
        ->check(CLI::IsMember({"jf", "j0", "both"}));
    compare->add_option("--solver", cmp_solver, "bfgs | ga | both")
        ->check(CLI::IsMember({"bfgs", "ga", "both"}));
    compare->add_option("--seed", cmp_seed, "GA random seed");
    compare->add_option("--quad-nodes", cmp_quad_nodes, "Quadrature nodes (odd, >= 33)");
    compare->add_option("--fit-degree", cmp_fit_degree, "Property fit degree");
    compare->add_option("--mu-v", cmp_mu_v, "Viscous friction [Nms/rad]");
    compare->add_option("--out", cmp_out, "Sweep CSV output path");
    add_common(compare, cmp_common);

    // --- identify ---
    auto* identify = app.add_subcommand("identify", "Identify viscous friction from a log");
    CommonFlags id_common;
    std::string id_properties, id_log, id_out;
    double id_theta_a = 0.0, id_theta_b = 0.0;
    int id_fit_degree = 9, id_property_degree = 20;
    identify->add_option("--properties", id_properties, "Property CSV")->required();
    identify->add_option("--log", id_log, "Measurement CSV")->required();
    identify->add_option("--theta-a", id_theta_a, "Start position [rad]");
    identify->add_option("--theta-b", id_theta_b, "End position [rad]");
    identify->add_option("--fit-degree", id_fit_degree, "Position polynomial degree");
    identify->add_option("--property-degree", id_property_degree, "Property fit degree");
    identify->add_option("--out", id_out, "Write the identified coefficient as a config file");
    add_common(identify, id_common);

    // --- export ---
    auto* exportc = app.add_subcommand("export", "Export a feedforward setpoint table");
    CommonFlags exp_common;
    std::string exp_profile, exp_properties, exp_out = "setpoints.csv";
    double exp_period = 0.001, exp_mu_v = 0.0;
    int exp_fit_degree = 20;
    exportc->add_option("--profile", exp_profile, "Profile document")->required();
    exportc->add_option("--properties", exp_properties, "Property CSV")->required();
    exportc->add_option("--sample-period", exp_period, "Setpoint period [s]")->required();
    exportc->add_option("--mu-v", exp_mu_v, "Viscous friction [Nms/rad]");
    exportc->add_option("--fit-degree", exp_fit_degree, "Property fit degree");
    exportc->add_option("--out", exp_out, "Setpoint CSV output path");
    add_common(exportc, exp_common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!kernel_name.empty() && !kernels::select(kernel_name))
            throw std::invalid_argument("kernel '" + kernel_name + "' is not available here");

        if (synth->parsed())
            return cmd_synth(mechanism, j0, sc, theta_min, theta_max, samples, synth_degrees,
                             synth_out);
        if (optimize->parsed())
            return cmd_optimize(opt_task, opt_common, opt_properties, opt_solver, opt_seed,
                                opt_quad_nodes, opt_fit_degree, opt_mu_v, opt_out, opt_plot,
                                optimize);
        if (compare->parsed())
            return cmd_compare(cmp_task, cmp_common, cmp_properties, cmp_solver, cmp_degrees,
                               cmp_jerk, cmp_seed, cmp_quad_nodes, cmp_fit_degree, cmp_mu_v,
                               cmp_out, compare);
        if (identify->parsed())
            return cmd_identify(id_common, id_properties, id_log, id_theta_a, id_theta_b,
                                id_fit_degree, id_property_degree, id_out, identify);
        if (exportc->parsed())
            return cmd_export(exp_common, exp_profile, exp_properties, exp_period, exp_mu_v,
                              exp_fit_degree, exp_out, exportc);
    } catch (const chebmotion::ParseError& e) {
        std::fprintf(stderr, "error[parse]: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error[invalid]: %s\n", e.what());
        return 4;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error[domain]: %s\n", e.what());
        return 5;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error[range]: %s\n", e.what());
        return 6;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error[runtime]: %s\n", e.what());
        return 7;
    }
    return 0;
}
