#include "mpe/trajectories.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mpe/io.hpp"
#include "mpe/rng.hpp"

namespace mpe {

namespace {

bool is_x_axis(const BlochAxis& axis) {
    return std::abs(axis.x() - 1.0) <= 1e-12 && std::abs(axis.y()) <= 1e-12 &&
           std::abs(axis.z()) <= 1e-12;
}

// The open-loop cycle only ever visits |+x> and |-x>, so the whole chain is
// determined by two branch probabilities.  They are obtained from the state
// operations once, not hardcoded.
struct CycleKernel {
    double p_plus_from_plus;   // P(outcome +x | pre-drive state +x)
    double p_plus_from_minus;  // P(outcome +x | pre-drive state -x)
    double work_per_cycle;     // extracted work when starting in +x
    double power_per_cycle;    // work_per_cycle / (tau_w + tau_mes)

    explicit CycleKernel(const EngineParams& params) {
        const BlochAxis axis = BlochAxis::x_axis();
        const auto [plus, minus] = basis_states(axis);
        p_plus_from_plus = plus_probability(rabi_evolve(plus, params.theta), axis);
        p_plus_from_minus = plus_probability(rabi_evolve(minus, params.theta), axis);
        work_per_cycle = work_extracted(axis, params.theta);
        power_per_cycle = work_per_cycle / (params.tau_w + params.tau_mes);
    }
};

}  // namespace

void TrajectoryConfig::validate() const {
    params.validate();
    if (n_cycles < 1)
        throw std::invalid_argument("TrajectoryConfig: n_cycles must be >= 1");
    if (n_realizations < 1)
        throw std::invalid_argument("TrajectoryConfig: n_realizations must be >= 1");
    if (!is_x_axis(params.axis))
        throw std::invalid_argument("TrajectoryConfig: open-loop protocol runs on the x axis");
}

TrajectoryRecord simulate_trajectory(const TrajectoryConfig& config, std::uint64_t seed_offset) {
    config.validate();
    const CycleKernel kernel(config.params);
    const CounterRng rng(config.seed);

    TrajectoryRecord record;
    record.outcomes.resize(config.n_cycles);
    record.power_series.resize(config.n_cycles);
    record.cumulative_work.resize(config.n_cycles);

    bool in_plus = true;  // prepared in |+x>
    double work_sum = 0.0;
    for (int k = 0; k < config.n_cycles; ++k) {
        const double sign = in_plus ? 1.0 : -1.0;
        record.power_series[k] = sign * kernel.power_per_cycle;
        work_sum += sign * kernel.work_per_cycle;
        record.cumulative_work[k] = work_sum;

        const double p_plus = in_plus ? kernel.p_plus_from_plus : kernel.p_plus_from_minus;
        const bool plus_found = rng.uniform(seed_offset, static_cast<std::uint64_t>(k)) < p_plus;
        record.outcomes[k] = plus_found ? Outcome::plus : Outcome::minus;
        in_plus = config.feedback_enabled ? true : plus_found;
    }
    return record;
}

double analytic_mean_power(const TrajectoryConfig& config, int n) {
    if (n < 0) throw std::domain_error("analytic_mean_power: n must be >= 0");
    const double theta = config.params.theta;
    const double tau_total = config.params.tau_w + config.params.tau_mes;
    return 0.5 * std::sin(theta) * std::pow(std::cos(theta), n) / tau_total;
}

double analytic_mean_power_small_theta(const TrajectoryConfig& config, int n) {
    if (n < 0) throw std::domain_error("analytic_mean_power_small_theta: n must be >= 0");
    const double theta = config.params.theta;
    const double tau_total = config.params.tau_w + config.params.tau_mes;
    return 0.5 * theta * std::pow(std::cos(theta), n) / tau_total;
}

double integrated_work(const TrajectoryConfig& config, int n) {
    if (n < 1) throw std::domain_error("integrated_work: n must be >= 1");
    const double theta = config.params.theta;
    const double c = std::cos(theta);
    if (c == 1.0) return 0.0;  // theta = 0: no work per cycle
    return 0.5 * std::sin(theta) * (1.0 - std::pow(c, n)) / (1.0 - c);
}

EnsembleStats run_ensemble(const TrajectoryConfig& config) {
    config.validate();
    const int n = config.n_cycles;

    EnsembleStats stats;
    stats.mean_power.assign(n, 0.0);
    stats.std_error.assign(n, 0.0);
    stats.mean_cumulative_work.assign(n, 0.0);

    std::vector<double> m2(n, 0.0);  // Welford accumulators per cycle
    for (int r = 0; r < config.n_realizations; ++r) {
        const TrajectoryRecord record = simulate_trajectory(config, static_cast<std::uint64_t>(r));
        const double count = static_cast<double>(r + 1);
        for (int k = 0; k < n; ++k) {
            const double delta = record.power_series[k] - stats.mean_power[k];
            stats.mean_power[k] += delta / count;
            m2[k] += delta * (record.power_series[k] - stats.mean_power[k]);
            stats.mean_cumulative_work[k] +=
                (record.cumulative_work[k] - stats.mean_cumulative_work[k]) / count;
        }
    }

    if (config.n_realizations > 1) {
        const double nr = static_cast<double>(config.n_realizations);
        for (int k = 0; k < n; ++k)
            stats.std_error[k] = std::sqrt(m2[k] / (nr - 1.0)) / std::sqrt(nr);
    }
    return stats;
}

void write_ensemble_csv(std::ostream& out, const TrajectoryConfig& config,
                        const EnsembleStats& stats,
                        const std::vector<std::string>& header_comments) {
    const double tau_total = config.params.tau_w + config.params.tau_mes;
    CsvWriter csv(out);
    for (const auto& line : header_comments) csv.comment(line);
    csv.header({"cycle_index", "time", "mean_power", "std_error", "analytic_exact",
                "analytic_paper"});
    for (int k = 0; k < config.n_cycles; ++k) {
        csv.row({static_cast<double>(k), k * tau_total, stats.mean_power[k],
                 stats.std_error[k], analytic_mean_power(config, k),
                 analytic_mean_power_small_theta(config, k)});
    }
}

void write_trajectory_csv(std::ostream& out, const TrajectoryConfig& config,
                          const TrajectoryRecord& record,
                          const std::vector<std::string>& header_comments) {
    const double tau_total = config.params.tau_w + config.params.tau_mes;
    CsvWriter csv(out);
    for (const auto& line : header_comments) csv.comment(line);
    csv.header({"cycle_index", "time", "power", "cumulative_work", "outcome"});
    for (int k = 0; k < config.n_cycles; ++k) {
        csv.row({static_cast<double>(k), k * tau_total, record.power_series[k],
                 record.cumulative_work[k],
                 record.outcomes[k] == Outcome::plus ? 1.0 : -1.0});
    }
}

}  // namespace mpe
