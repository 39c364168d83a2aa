// trajectories.hpp
// Stochastic simulation of the open-loop (no-feedback) engine on the x axis:
// single quantum-jump realizations, seeded reproducible ensembles, and the
// closed-form per-cycle mean-power decay they are checked against.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mpe/engine.hpp"

namespace mpe {

struct TrajectoryConfig {
    EngineParams params;     // x-axis operating point; tau_mes may be finite
    int n_cycles = 1;
    int n_realizations = 1;
    std::uint64_t seed = 0;
    bool feedback_enabled = false;

    void validate() const;  // throws std::invalid_argument
};

// One stochastic realization.  power_series[k] is the extracted power of
// cycle k, +/- (sin(theta)/2)/(tau_w + tau_mes) with the sign set by the
// state occupied before the drive; cumulative_work is the running sum of
// the per-cycle works.
struct TrajectoryRecord {
    std::vector<Outcome> outcomes;
    std::vector<double> power_series;
    std::vector<double> cumulative_work;
};

// Per-cycle statistics over independent realizations.  std_error is the
// sample standard deviation divided by sqrt(n_realizations) (0 when a
// cycle's powers carry no spread, e.g. a single realization).
struct EnsembleStats {
    std::vector<double> mean_power;
    std::vector<double> std_error;
    std::vector<double> mean_cumulative_work;
};

// Simulates one trajectory; draws come from CounterRng keyed by
// (config.seed, seed_offset, cycle), so records are reproducible
// bit-for-bit and independent across seed_offset values.
TrajectoryRecord simulate_trajectory(const TrajectoryConfig& config, std::uint64_t seed_offset);

// Exact-recurrence mean power at cycle n:
// (sin(theta)/2) cos^n(theta) / (tau_w + tau_mes).
double analytic_mean_power(const TrajectoryConfig& config, int n);

// The small-angle variant with sin(theta) replaced by theta:
// (omega/2) (tau_w/(tau_w+tau_mes)) cos^n(theta).
double analytic_mean_power_small_theta(const TrajectoryConfig& config, int n);

// Exact mean work integrated over the first n cycles:
// (sin(theta)/2) (1 - cos^n(theta)) / (1 - cos(theta)).
double integrated_work(const TrajectoryConfig& config, int n);

// Averages config.n_realizations independent trajectories, accumulated in
// realization order.
EnsembleStats run_ensemble(const TrajectoryConfig& config);

// Per-cycle CSV with columns
// cycle_index,time,mean_power,std_error,analytic_exact,analytic_paper.
// header_comments lines are emitted first, each prefixed with "# ".
void write_ensemble_csv(std::ostream& out, const TrajectoryConfig& config,
                        const EnsembleStats& stats,
                        const std::vector<std::string>& header_comments = {});

// Single-realization CSV with columns
// cycle_index,time,power,cumulative_work,outcome (outcome: +1 / -1).
void write_trajectory_csv(std::ostream& out, const TrajectoryConfig& config,
                          const TrajectoryRecord& record,
                          const std::vector<std::string>& header_comments = {});

}  // namespace mpe
