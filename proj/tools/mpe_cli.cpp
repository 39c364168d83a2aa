// mpe_cli.cpp
// Command-line front end: parameter sweeps, figure-data generation,
// trajectory ensembles and quantized-field verification runs.
//
// Exit codes: 0 success, 1 tolerance failure, 2 usage/config error.
//
// Values resolve as: command-line flag > config-file key > built-in default.
// The effective configuration is echoed into every output header.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpe/cavity.hpp"
#include "mpe/engine.hpp"
#include "mpe/io.hpp"
#include "mpe/trajectories.hpp"

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;

using ConfigMap = std::map<std::string, std::string>;

// Ordered list of (key, value) pairs describing the effective run, echoed
// into CSV comments or a JSON "config" object.
using Provenance = std::vector<std::pair<std::string, std::string>>;

struct OutputOptions {
    std::string out;     // empty = stdout
    std::string format;  // "csv" or "json"
    std::string config_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts, const std::string& default_format) {
    opts.format = default_format;
    cmd->add_option("--out", opts.out, "Output file path (default: stdout)");
    cmd->add_option("--format", opts.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--config", opts.config_path,
                    "Flat key=value config file; flags given on the command line win");
}

// Applies config-file values to options the user did not pass explicitly.
// Unknown keys are rejected.
void apply_config_file(CLI::App* cmd, const OutputOptions& opts) {
    if (opts.config_path.empty()) return;
    std::ifstream in(opts.config_path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + opts.config_path);
    const ConfigMap values = mpe::parse_config_file(in);
    for (const auto& [key, value] : values) {
        // config keys are snake_case field names; flags are hyphenated
        std::string flag = key;
        for (char& c : flag)
            if (c == '_') c = '-';
        CLI::Option* opt = cmd->get_option_no_throw("--" + flag);
        if (opt == nullptr)
            throw CLI::ValidationError("--config", "unknown key '" + key + "'");
        if (opt->count() > 0) continue;  // explicit flag wins
        opt->add_result(value);
        opt->run_callback();
    }
}

std::vector<std::string> provenance_comments(const std::string& subcommand,
                                             const Provenance& entries) {
    std::vector<std::string> lines;
    lines.push_back("subcommand = " + subcommand);
    for (const auto& [k, v] : entries) lines.push_back(k + " = " + v);
    return lines;
}

nlohmann::ordered_json provenance_json(const std::string& subcommand,
                                       const Provenance& entries) {
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    for (const auto& [k, v] : entries) j[k] = v;
    return j;
}

// Writes a table as CSV or as a JSON object with columns/rows.
void emit_table(const OutputOptions& opts, const std::string& subcommand,
                const Provenance& prov, const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows, std::ostream& out) {
    if (opts.format == "csv") {
        mpe::CsvWriter csv(out);
        for (const auto& line : provenance_comments(subcommand, prov)) csv.comment(line);
        csv.header(columns);
        for (const auto& row : rows) csv.row(row);
        return;
    }
    nlohmann::ordered_json j;
    j["config"] = provenance_json(subcommand, prov);
    j["columns"] = columns;
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    for (const auto& row : rows) jrows.push_back(row);
    j["rows"] = std::move(jrows);
    out << j.dump(2) << "\n";
}

class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw CLI::ValidationError("--out", "cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string fmt(double v) { return mpe::format_double(v); }

// ---------------------------------------------------------------------------
// yield-sweep

struct YieldSweepArgs {
    OutputOptions out;
    double kappa = 0.5;
    double theta_min = 0.01;
    double theta_max = kPi - 0.01;
    int theta_steps = 200;
};

int run_yield_sweep(const YieldSweepArgs& args) {
    if (!(args.theta_min > 0.0 && args.theta_max < kPi && args.theta_min <= args.theta_max))
        throw CLI::ValidationError("--theta-min/--theta-max",
                                   "theta grid must lie strictly inside (0, pi)");
    if (args.theta_steps < 1)
        throw CLI::ValidationError("--theta-steps", "need at least one grid point");

    Provenance prov{{"kappa", fmt(args.kappa)},
                    {"theta_min", fmt(args.theta_min)},
                    {"theta_max", fmt(args.theta_max)},
                    {"theta_steps", std::to_string(args.theta_steps)},
                    {"format", args.out.format}};

    std::vector<std::vector<double>> rows;
    const mpe::BlochAxis x = mpe::BlochAxis::x_axis();
    for (int i = 0; i < args.theta_steps; ++i) {
        const double theta =
            args.theta_steps == 1
                ? args.theta_min
                : args.theta_min +
                      i * (args.theta_max - args.theta_min) / (args.theta_steps - 1);
        rows.push_back({theta, mpe::mpe_yield(theta, args.kappa),
                        mpe::classical_yield(args.kappa),
                        mpe::mean_power(x, theta, 1.0)});
    }

    OutputTarget target(args.out.out);
    emit_table(args.out, "yield-sweep", prov,
               {"theta", "eta_mpe", "eta_classical", "normalized_power"}, rows,
               target.stream());
    return 0;
}

// ---------------------------------------------------------------------------
// power-map

struct PowerMapArgs {
    OutputOptions out;
    std::vector<double> thetas;  // 0 encodes the Zeno limit
    double grid_deg = 5.0;
};

int run_power_map(const PowerMapArgs& args) {
    if (!(args.grid_deg > 0.0 && args.grid_deg <= 90.0))
        throw CLI::ValidationError("--grid-deg", "grid step must lie in (0, 90] degrees");
    std::vector<double> thetas = args.thetas;
    if (thetas.empty()) thetas = {kPi / 2, kPi / 4, 0.0};
    for (double theta : thetas)
        if (theta < 0.0)
            throw CLI::ValidationError("--theta", "theta must be >= 0 (0 = Zeno limit)");

    std::ostringstream theta_list;
    for (std::size_t i = 0; i < thetas.size(); ++i)
        theta_list << (i ? " " : "") << fmt(thetas[i]);
    Provenance prov{{"theta", theta_list.str()},
                    {"grid_deg", fmt(args.grid_deg)},
                    {"format", args.out.format}};

    std::vector<std::vector<double>> rows;
    const int n_theta = static_cast<int>(std::round(180.0 / args.grid_deg));
    const int n_phi = static_cast<int>(std::round(360.0 / args.grid_deg));
    for (double theta : thetas) {
        for (int it = 0; it <= n_theta; ++it) {
            const double theta_n = it * kPi / n_theta;
            for (int ip = 0; ip < n_phi; ++ip) {
                const double phi_n = ip * 2.0 * kPi / n_phi;
                const mpe::BlochAxis axis(theta_n, phi_n);
                rows.push_back({theta_n, phi_n, theta, mpe::mean_power(axis, theta, 1.0)});
            }
        }
    }

    OutputTarget target(args.out.out);
    emit_table(args.out, "power-map", prov,
               {"theta_n", "phi_n", "theta", "normalized_power"}, rows, target.stream());
    return 0;
}

// ---------------------------------------------------------------------------
// trajectories

struct TrajectoriesArgs {
    OutputOptions out;
    double omega_mhz = 0.2;
    double tau_w_ns = 70.0;
    double tau_mes_ns = 70.0;
    std::string omega_unit = "angular";  // "angular": MHz as 1e6 rad/s
    int cycles = 2000;
    int realizations = 10000;
    std::uint64_t seed = 1;
    bool feedback = false;
    double kappa = 0.5;
};

mpe::TrajectoryConfig trajectory_config(const TrajectoriesArgs& args) {
    // Internal units: time in ns, omega in rad/ns.
    double omega = args.omega_mhz * 1e6 * 1e-9;
    if (args.omega_unit == "cyclic") omega *= 2.0 * kPi;
    mpe::TrajectoryConfig config{
        mpe::EngineParams::from_timing(omega, args.tau_w_ns, args.tau_mes_ns, args.kappa,
                                       mpe::BlochAxis::x_axis()),
        args.cycles, args.realizations, args.seed, args.feedback};
    config.validate();
    return config;
}

std::string sample_path(const std::string& out) {
    const auto dot = out.rfind('.');
    if (dot == std::string::npos || out.find('/', dot) != std::string::npos)
        return out + ".sample";
    return out.substr(0, dot) + ".sample" + out.substr(dot);
}

int run_trajectories(const TrajectoriesArgs& args) {
    if (args.out.out.empty())
        throw CLI::ValidationError("--out",
                                   "trajectories writes two files and needs an output path");
    if (args.out.format != "csv")
        throw CLI::ValidationError("--format", "trajectories output is CSV only");
    if (args.omega_unit != "angular" && args.omega_unit != "cyclic")
        throw CLI::ValidationError("--omega-unit", "expected 'angular' or 'cyclic'");

    const mpe::TrajectoryConfig config = trajectory_config(args);
    Provenance prov{{"omega_mhz", fmt(args.omega_mhz)},
                    {"omega_unit", args.omega_unit},
                    {"tau_w_ns", fmt(args.tau_w_ns)},
                    {"tau_mes_ns", fmt(args.tau_mes_ns)},
                    {"theta", fmt(config.params.theta)},
                    {"cycles", std::to_string(args.cycles)},
                    {"realizations", std::to_string(args.realizations)},
                    {"seed", std::to_string(args.seed)},
                    {"feedback", args.feedback ? "true" : "false"},
                    {"time_unit", "ns"}};

    const mpe::EnsembleStats stats = mpe::run_ensemble(config);
    {
        std::ofstream out(args.out.out, std::ios::binary);
        if (!out) throw CLI::ValidationError("--out", "cannot open " + args.out.out);
        mpe::write_ensemble_csv(out, config, stats,
                                provenance_comments("trajectories", prov));
    }
    {
        const mpe::TrajectoryRecord sample = mpe::simulate_trajectory(config, 0);
        std::ofstream out(sample_path(args.out.out), std::ios::binary);
        if (!out)
            throw CLI::ValidationError("--out", "cannot open " + sample_path(args.out.out));
        mpe::write_trajectory_csv(out, config, sample,
                                  provenance_comments("trajectories-sample", prov));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// cavity-check

struct CavityCheckArgs {
    OutputOptions out;
    double n_bar = 400.0;
    double theta = 0.04;
    int n_max = -1;  // -1 = default cutoff rule
    double tolerance = 0.10;
    bool informational = false;
};

int run_cavity_check(const CavityCheckArgs& args) {
    if (!(args.n_bar > 0.0))
        throw CLI::ValidationError("--n-bar", "mean photon number must be positive");
    if (!(args.theta >= 0.0))
        throw CLI::ValidationError("--theta", "theta must be >= 0");
    const int n_max = args.n_max >= 0 ? args.n_max : mpe::default_fock_cutoff(args.n_bar);

    const double alpha = std::sqrt(args.n_bar);
    const double omega0 = 1.0;
    const double t = args.theta / (omega0 * alpha);

    mpe::QuantizedCycleReport report{};
    try {
        report = mpe::run_quantized_cycle(alpha, omega0, t, n_max);
    } catch (const mpe::TruncationError& e) {
        // distinct from a tolerance failure: the cutoff cannot represent the
        // state, which is a configuration problem
        std::cerr << "truncation inadequacy: " << e.what() << "\n";
        return kExitUsage;
    }

    const double prob_err =
        report.analytic_prob_minus > 0.0
            ? std::abs(report.prob_minus - report.analytic_prob_minus) /
                  report.analytic_prob_minus
            : std::abs(report.prob_minus);
    const double gain_err =
        report.analytic_gain > 0.0
            ? std::abs(report.photon_gain - report.analytic_gain) / report.analytic_gain
            : std::abs(report.photon_gain);
    const bool within = prob_err <= args.tolerance && gain_err <= args.tolerance;

    Provenance prov{{"n_bar", fmt(args.n_bar)},
                    {"theta", fmt(args.theta)},
                    {"n_max", std::to_string(n_max)},
                    {"tolerance", fmt(args.tolerance)},
                    {"informational", args.informational ? "true" : "false"}};

    OutputTarget target(args.out.out);
    if (args.out.format == "json") {
        nlohmann::ordered_json j;
        j["config"] = provenance_json("cavity-check", prov);
        j["theta"] = report.theta;
        j["n_bar"] = report.n_bar;
        j["prob_minus"] = report.prob_minus;
        j["analytic_prob_minus"] = report.analytic_prob_minus;
        j["photon_gain"] = report.photon_gain;
        j["analytic_gain"] = report.analytic_gain;
        j["fidelity_plus_branch"] = report.fidelity_plus_branch;
        j["truncation_tail_mass"] = report.truncation_tail_mass;
        j["within_tolerance"] = within;
        target.stream() << j.dump(2) << "\n";
    } else {
        emit_table(args.out, "cavity-check", prov,
                   {"theta", "n_bar", "prob_minus", "analytic_prob_minus", "photon_gain",
                    "analytic_gain", "fidelity_plus_branch", "truncation_tail_mass",
                    "within_tolerance"},
                   {{report.theta, report.n_bar, report.prob_minus,
                     report.analytic_prob_minus, report.photon_gain, report.analytic_gain,
                     report.fidelity_plus_branch, report.truncation_tail_mass,
                     within ? 1.0 : 0.0}},
                   target.stream());
    }

    if (!within && !args.informational) return kExitTolerance;
    return 0;
}

// ---------------------------------------------------------------------------
// audit

struct AuditArgs {
    OutputOptions out;
    int theta_steps = 100;
};

int run_audit(const AuditArgs& args) {
    if (args.theta_steps < 1)
        throw CLI::ValidationError("--theta-steps", "need at least one grid point");

    Provenance prov{{"theta_steps", std::to_string(args.theta_steps)},
                    {"format", args.out.format}};

    std::vector<std::vector<double>> rows;
    for (int i = 0; i < args.theta_steps; ++i) {
        const double theta = i * kPi / args.theta_steps;  // grid over [0, pi)
        const auto excited =
            mpe::audit_effective_readout(theta, mpe::AuditBranch::excited_found);
        const auto ground =
            mpe::audit_effective_readout(theta, mpe::AuditBranch::ground_found);
        const double p_excited =
            mpe::audit_branch_probability(theta, mpe::AuditBranch::excited_found);
        rows.push_back({theta, excited.pulse1_work, excited.projection_energy,
                        ground.projection_energy, excited.pulse2_work, ground.pulse2_work,
                        p_excited, 1.0 - p_excited, excited.total, ground.total,
                        excited.total - 0.5 * std::sin(theta)});
    }

    OutputTarget target(args.out.out);
    emit_table(args.out, "audit", prov,
               {"theta", "pulse1_work", "projection_excited", "projection_ground",
                "pulse2_excited", "pulse2_ground", "prob_excited", "prob_ground",
                "total_excited", "total_ground", "closure"},
               rows, target.stream());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measurement-powered qubit engine: sweeps, ensembles and"
                 " quantized-field verification"};
    app.require_subcommand(1);

    YieldSweepArgs yield_args;
    auto* yield_cmd = app.add_subcommand(
        "yield-sweep", "Engine yield and normalized power versus Rabi angle");
    yield_cmd->add_option("--kappa", yield_args.kappa, "Erasure cost 2 kB T log2 / (hbar w0)");
    yield_cmd->add_option("--theta-min", yield_args.theta_min, "Smallest Rabi angle (rad)");
    yield_cmd->add_option("--theta-max", yield_args.theta_max, "Largest Rabi angle (rad)");
    yield_cmd->add_option("--theta-steps", yield_args.theta_steps, "Grid size");
    add_output_options(yield_cmd, yield_args.out, "csv");

    PowerMapArgs power_args;
    auto* power_cmd = app.add_subcommand(
        "power-map", "Normalized power over the Bloch sphere of operating points");
    power_cmd->add_option("--theta", power_args.thetas,
                          "Rabi angles (rad); 0 = Zeno limit; repeatable");
    power_cmd->add_option("--grid-deg", power_args.grid_deg, "Angular grid step (degrees)");
    add_output_options(power_cmd, power_args.out, "csv");

    TrajectoriesArgs traj_args;
    auto* traj_cmd = app.add_subcommand(
        "trajectories", "Open-loop ensemble statistics plus one sample realization");
    traj_cmd->add_option("--omega-mhz", traj_args.omega_mhz, "Rabi frequency in MHz");
    traj_cmd->add_option("--omega-unit", traj_args.omega_unit,
                         "MHz convention: angular (1e6 rad/s) or cyclic (2pi 1e6 rad/s)");
    traj_cmd->add_option("--tau-w-ns", traj_args.tau_w_ns, "Drive duration (ns)");
    traj_cmd->add_option("--tau-mes-ns", traj_args.tau_mes_ns, "Readout duration (ns)");
    traj_cmd->add_option("--cycles", traj_args.cycles, "Cycles per realization");
    traj_cmd->add_option("--realizations", traj_args.realizations, "Ensemble size");
    traj_cmd->add_option("--seed", traj_args.seed, "RNG seed");
    traj_cmd->add_flag("--feedback,!--no-feedback", traj_args.feedback,
                       "Restore |+x> after every readout");
    traj_cmd->add_option("--kappa", traj_args.kappa, "Erasure cost parameter");
    add_output_options(traj_cmd, traj_args.out, "csv");

    CavityCheckArgs cavity_args;
    auto* cavity_cmd = app.add_subcommand(
        "cavity-check", "Quantized-drive verification against the small-angle targets");
    cavity_cmd->add_option("--n-bar", cavity_args.n_bar, "Mean photon number");
    cavity_cmd->add_option("--theta", cavity_args.theta, "Rabi angle Omega0 sqrt(n) t (rad)");
    cavity_cmd->add_option("--n-max", cavity_args.n_max, "Fock cutoff (-1 = automatic)");
    cavity_cmd->add_option("--tolerance", cavity_args.tolerance,
                           "Relative agreement required of the analytic targets");
    cavity_cmd->add_flag("--informational", cavity_args.informational,
                         "Report tolerance violations without failing");
    add_output_options(cavity_cmd, cavity_args.out, "json");

    AuditArgs audit_args;
    auto* audit_cmd = app.add_subcommand(
        "audit", "Pulse-level energy decomposition of the effective x readout");
    audit_cmd->add_option("--theta-steps", audit_args.theta_steps, "Grid size over [0, pi)");
    add_output_options(audit_cmd, audit_args.out, "csv");

    try {
        app.parse(argc, argv);
        if (yield_cmd->parsed()) {
            apply_config_file(yield_cmd, yield_args.out);
            return run_yield_sweep(yield_args);
        }
        if (power_cmd->parsed()) {
            apply_config_file(power_cmd, power_args.out);
            return run_power_map(power_args);
        }
        if (traj_cmd->parsed()) {
            apply_config_file(traj_cmd, traj_args.out);
            return run_trajectories(traj_args);
        }
        if (cavity_cmd->parsed()) {
            apply_config_file(cavity_cmd, cavity_args.out);
            return run_cavity_check(cavity_args);
        }
        if (audit_cmd->parsed()) {
            apply_config_file(audit_cmd, audit_args.out);
            return run_audit(audit_args);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
