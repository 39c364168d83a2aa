// engine.hpp
// The engine protocols: thermally driven reference cycle, the
// measurement-powered cycle for an arbitrary measurement axis, closed-form
// yield and power expressions, and the pulse-level energy audit of the
// effective x-basis readout.
//
// Energies are dimensionless (units of hbar*omega0); powers are in
// hbar*omega0 per time unit, where the time unit is whatever omega and
// tau_w are expressed in.

#pragma once

#include <optional>
#include <utility>

#include "mpe/qubit.hpp"

namespace mpe {

// One engine configuration.  kappa = 2 kB T_D log(2) / (hbar omega0) is the
// dimensionless erasure cost per bit of demon memory.
struct EngineParams {
    double theta;     // Rabi angle Omega * tau_w (radians)
    double kappa;     // erasure cost parameter, >= 0
    BlochAxis axis;   // measurement / operating basis
    double omega;     // Rabi frequency (rad per time unit)
    double tau_w;     // drive duration (> 0)
    double tau_mes;   // measurement duration (>= 0; 0 for the idealized protocol)

    // tau_w is derived as theta / omega, keeping theta = omega * tau_w exact.
    static EngineParams from_theta(double theta, double kappa, const BlochAxis& axis,
                                   double omega, double tau_mes = 0.0);

    // theta is derived as omega * tau_w.
    static EngineParams from_timing(double omega, double tau_w, double tau_mes,
                                    double kappa, const BlochAxis& axis);

    void validate() const;  // throws std::invalid_argument on violation
};

// Per-cycle energy and entropy bookkeeping (units of hbar*omega0; entropy in bits).
struct CycleLedger {
    double w_ext;         // work extracted into the drive
    double e_meas;        // energy provided by the measurement channel
    double w_fb;          // feedback work (extracted; 0 on the x axis)
    double s_demon_bits;  // demon memory entropy per cycle
    double w_er;          // erasure work, (kappa/2) * s_demon_bits
    Outcome outcome;      // realized measurement result
};

// Yield of the thermally driven reference engine: 1 - kappa.
double classical_yield(double kappa);

// Yield of the measurement powered engine at Rabi angle theta:
// 1 - kappa * H2[cos^2(theta/2)] / sin(theta).  Throws std::domain_error
// for theta in {0, pi} (singular); callers use limits there.
double mpe_yield(double theta, double kappa);

// Mean work extracted per cycle starting in |+n>:
// ((1 - cos theta) z_n + sin(theta) x_n) / 2.
double work_extracted(const BlochAxis& axis, double theta);

// Mean feedback work per cycle: -sin^2(theta/2) z_n (1 - y_n^2).
double feedback_work(const BlochAxis& axis, double theta);

// Mean energy provided by the measurement channel per cycle; equals
// work_extracted + feedback_work (the cycle is closed, so the measurement
// channel funds everything the drive receives).
double measurement_energy(const BlochAxis& axis, double theta);

// Mean extracted power (work_extracted + feedback_work) / tau_w with
// tau_w = theta / omega.  theta = 0 returns the Zeno limit (omega/2) x_n.
double mean_power(const BlochAxis& axis, double theta, double omega);

// Instantaneous extracted power (omega/2) <sigma_x>.
double instantaneous_power(const QubitState& state, double omega);

// Yield generalized to an arbitrary axis:
// (w_ext + w_fb - w_er) / e_meas, undefined when e_meas <= 0.
std::optional<double> generalized_yield(const BlochAxis& axis, double theta, double kappa);

// One full cycle: drive rotation, projective readout, feedback restoring
// |+n>, erasure accounting.  The incoming state must be |+n>; the returned
// state is again |+n>.  w_ext is deterministic, e_meas is the energy jump
// of the realized projection, s_demon_bits is the entropy of the outcome
// distribution (ensemble value).
std::pair<QubitState, CycleLedger> run_cycle(const EngineParams& params,
                                             const QubitState& state, double rng_draw);

// Energy decomposition of the effective x-basis readout realized as
// (pi/2 pulse, sigma_z projection, pi/2 pulse back).  All entries are
// energies provided to the qubit, in units of hbar*omega0.
enum class AuditBranch { excited_found, ground_found };

struct ReadoutAudit {
    double pulse1_work;       // (cos theta + sin theta) / 2, branch independent
    double projection_energy; // sin^2(theta/2) or -cos^2(theta/2)
    double pulse2_work;       // -1/2 or +1/2
    double total;             // sums to sin(theta)/2 on both branches
};

ReadoutAudit audit_effective_readout(double theta, AuditBranch branch);

// Probability of the audit branch: cos^2(theta/2) for excited_found,
// sin^2(theta/2) for ground_found.
double audit_branch_probability(double theta, AuditBranch branch);

// Mean ledger of the thermally driven reference cycle (hot bath + energy-basis
// demon): w_ext = 1/2 = Q_hot, one full bit of demon memory.
CycleLedger thermal_cycle_reference(double kappa);

}  // namespace mpe
