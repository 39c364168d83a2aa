#include "mpe/engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mpe {

namespace {

constexpr double kPi = std::numbers::pi;

double square(double v) { return v * v; }

}  // namespace

EngineParams EngineParams::from_theta(double theta, double kappa, const BlochAxis& axis,
                                      double omega, double tau_mes) {
    if (!(omega > 0.0))
        throw std::invalid_argument("EngineParams: omega must be positive to derive tau_w");
    EngineParams p{theta, kappa, axis, omega, theta / omega, tau_mes};
    p.validate();
    return p;
}

EngineParams EngineParams::from_timing(double omega, double tau_w, double tau_mes,
                                       double kappa, const BlochAxis& axis) {
    EngineParams p{omega * tau_w, kappa, axis, omega, tau_w, tau_mes};
    p.validate();
    return p;
}

void EngineParams::validate() const {
    if (!(theta >= 0.0)) throw std::invalid_argument("EngineParams: theta must be >= 0");
    if (!(kappa >= 0.0)) throw std::invalid_argument("EngineParams: kappa must be >= 0");
    if (!(tau_w > 0.0)) throw std::invalid_argument("EngineParams: tau_w must be > 0");
    if (!(tau_mes >= 0.0)) throw std::invalid_argument("EngineParams: tau_mes must be >= 0");
    if (std::abs(theta - omega * tau_w) > 1e-12)
        throw std::invalid_argument("EngineParams: theta must equal omega * tau_w");
}

double classical_yield(double kappa) {
    if (!(kappa >= 0.0)) throw std::domain_error("classical_yield: kappa must be >= 0");
    return 1.0 - kappa;
}

double mpe_yield(double theta, double kappa) {
    if (!(kappa >= 0.0)) throw std::domain_error("mpe_yield: kappa must be >= 0");
    if (!(theta > 0.0 && theta < kPi))
        throw std::domain_error("mpe_yield: theta must lie strictly inside (0, pi)");
    const double p = square(std::cos(0.5 * theta));
    return 1.0 - kappa * shannon_entropy_bits(p) / std::sin(theta);
}

double work_extracted(const BlochAxis& axis, double theta) {
    if (!(theta >= 0.0)) throw std::domain_error("work_extracted: theta must be >= 0");
    return 0.5 * ((1.0 - std::cos(theta)) * axis.z() + std::sin(theta) * axis.x());
}

double feedback_work(const BlochAxis& axis, double theta) {
    return -square(std::sin(0.5 * theta)) * axis.z() * (1.0 - square(axis.y()));
}

double measurement_energy(const BlochAxis& axis, double theta) {
    return 0.5 * (std::sin(theta) * axis.x() +
                  (1.0 - std::cos(theta)) * axis.z() * square(axis.y()));
}

double mean_power(const BlochAxis& axis, double theta, double omega) {
    if (theta < 0.0) throw std::domain_error("mean_power: theta must be >= 0");
    if (theta == 0.0) return 0.5 * omega * axis.x();  // Zeno limit
    // measurement_energy is the combined form of w_ext + w_fb; it avoids the
    // cancellation the term-by-term sum suffers on the z axis.
    const double tau_w = theta / omega;
    return measurement_energy(axis, theta) / tau_w;
}

double instantaneous_power(const QubitState& state, double omega) {
    return 0.5 * omega * state.bloch_vector().x();
}

std::optional<double> generalized_yield(const BlochAxis& axis, double theta, double kappa) {
    const double e_meas = measurement_energy(axis, theta);
    if (!(e_meas > 0.0)) return std::nullopt;
    const double p_minus = square(std::sin(0.5 * theta)) * (1.0 - square(axis.y()));
    const double s_bits = shannon_entropy_bits(std::min(std::max(1.0 - p_minus, 0.0), 1.0));
    const double w_er = 0.5 * kappa * s_bits;
    return (work_extracted(axis, theta) + feedback_work(axis, theta) - w_er) / e_meas;
}

std::pair<QubitState, CycleLedger> run_cycle(const EngineParams& params,
                                             const QubitState& state, double rng_draw) {
    params.validate();
    const auto [plus, minus] = basis_states(params.axis);
    if (fidelity(state, plus) < 1.0 - 1e-9)
        throw std::invalid_argument("run_cycle: state must be |+n> at cycle start");

    // (i) work extraction
    const double u0 = internal_energy(plus);
    const QubitState rotated = rabi_evolve(plus, params.theta);
    const double u1 = internal_energy(rotated);

    // (ii) readout
    const MeasurementResult mr = measure(rotated, params.axis, rng_draw);
    const double u2 = internal_energy(mr.post_state);

    // (iii) feedback: unitary mapping |-n> -> |+n>, work read off the energy
    // difference; on the x axis this is a free Z rotation of zero cost.
    const double u_plus = internal_energy(plus);
    const double w_fb = (mr.outcome == Outcome::minus) ? (u2 - u_plus) : 0.0;

    // (iv) erasure at the Landauer bound, using the entropy of the outcome
    // distribution of this configuration.
    const double p_plus = plus_probability(rotated, params.axis);
    const double s_bits = shannon_entropy_bits(p_plus);

    CycleLedger ledger{};
    ledger.w_ext = u0 - u1;
    ledger.e_meas = u2 - u1;
    ledger.w_fb = w_fb;
    ledger.s_demon_bits = s_bits;
    ledger.w_er = 0.5 * params.kappa * s_bits;
    ledger.outcome = mr.outcome;
    return {plus, ledger};
}

ReadoutAudit audit_effective_readout(double theta, AuditBranch branch) {
    if (!(theta >= 0.0 && theta < kPi))
        throw std::domain_error("audit_effective_readout: theta must lie in [0, pi)");
    ReadoutAudit a{};
    a.pulse1_work = 0.5 * (std::cos(theta) + std::sin(theta));
    if (branch == AuditBranch::excited_found) {
        a.projection_energy = square(std::sin(0.5 * theta));
        a.pulse2_work = -0.5;
    } else {
        a.projection_energy = -square(std::cos(0.5 * theta));
        a.pulse2_work = 0.5;
    }
    a.total = a.pulse1_work + a.projection_energy + a.pulse2_work;
    return a;
}

double audit_branch_probability(double theta, AuditBranch branch) {
    const double p_excited = square(std::cos(0.5 * theta));
    return branch == AuditBranch::excited_found ? p_excited : 1.0 - p_excited;
}

CycleLedger thermal_cycle_reference(double kappa) {
    if (!(kappa >= 0.0)) throw std::domain_error("thermal_cycle_reference: kappa must be >= 0");
    CycleLedger ledger{};
    ledger.w_ext = 0.5;          // = Q_hot
    ledger.e_meas = 0.0;         // energy-basis readout exchanges no energy
    ledger.w_fb = 0.0;
    ledger.s_demon_bits = 1.0;   // hot bath at kB*T >> 1 fills a full bit
    ledger.w_er = 0.5 * kappa;
    ledger.outcome = Outcome::plus;
    return ledger;
}

}  // namespace mpe
