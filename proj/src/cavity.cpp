#include "mpe/cavity.hpp"

#include <cmath>

namespace mpe {

namespace {

constexpr double kTailTolerance = 1e-10;

double relative_tail_mass(const JointState& state) {
    const double total = state.squared_norm();
    if (total <= 0.0) return 0.0;
    const int top = state.n_max();
    return (std::norm(state.excited[top]) + std::norm(state.ground[top])) / total;
}

}  // namespace

FieldState::FieldState(VectorXc amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1)
        throw std::invalid_argument("FieldState: amplitude vector must be nonempty");
}

FieldState FieldState::vacuum(int n_max) {
    return fock(0, n_max);
}

FieldState FieldState::fock(int n, int n_max) {
    if (n_max < 0 || n < 0 || n > n_max)
        throw std::invalid_argument("FieldState: need 0 <= n <= n_max");
    VectorXc amps = VectorXc::Zero(n_max + 1);
    amps[n] = 1.0;
    return FieldState(std::move(amps));
}

int default_fock_cutoff(double n_bar) {
    if (!(n_bar >= 0.0))
        throw std::invalid_argument("default_fock_cutoff: n_bar must be >= 0");
    return static_cast<int>(std::ceil(n_bar + 8.0 * std::sqrt(n_bar) + 20.0));
}

FieldState coherent_state(Complex alpha, int n_max) {
    const double n_bar = std::norm(alpha);
    if (n_max < 0) throw std::invalid_argument("coherent_state: n_max must be >= 0");
    if (static_cast<double>(n_max) < n_bar + 8.0 * std::abs(alpha))
        throw TruncationError("coherent_state: n_max below |alpha|^2 + 8|alpha|");

    VectorXc amps(n_max + 1);
    amps[0] = std::exp(-0.5 * n_bar);
    for (int n = 1; n <= n_max; ++n)
        amps[n] = amps[n - 1] * alpha / std::sqrt(static_cast<double>(n));

    const double total = amps.squaredNorm();
    if (!(total > 0.0))
        throw TruncationError("coherent_state: amplitudes underflowed; n_bar too large");
    if (std::norm(amps[n_max]) / total > kTailTolerance)
        throw TruncationError("coherent_state: tail mass at n_max exceeds tolerance");
    return FieldState(std::move(amps));
}

JointState prepare_with_plus_x(const FieldState& field) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    JointState joint;
    joint.excited = inv_sqrt2 * field.amplitudes();
    joint.ground = inv_sqrt2 * field.amplitudes();
    return joint;
}

JointState jc_evolve(const JointState& state, double omega0, double t) {
    if (state.excited.size() != state.ground.size())
        throw std::invalid_argument("jc_evolve: mismatched component sizes");
    const int n_max = state.n_max();

    JointState out;
    out.excited = state.excited;
    out.ground = state.ground;

    // Manifold {|1,n>, |0,n+1>} rotates by Omega0 sqrt(n+1) t / 2; |0,0> is
    // dark and the top excited amplitude has no partner inside the cutoff,
    // so it is left untouched (its weight is bounded by the tail check).
    for (int n = 0; n < n_max; ++n) {
        const double half_angle = 0.5 * omega0 * std::sqrt(n + 1.0) * t;
        const double c = std::cos(half_angle);
        const double s = std::sin(half_angle);
        const Complex e = state.excited[n];
        const Complex g = state.ground[n + 1];
        out.excited[n] = c * e - s * g;
        out.ground[n + 1] = s * e + c * g;
    }
    return out;
}

double total_excitation(const JointState& state) {
    double sum = 0.0;
    for (int n = 0; n <= state.n_max(); ++n)
        sum += n * (std::norm(state.excited[n]) + std::norm(state.ground[n])) +
               std::norm(state.excited[n]);
    return sum;
}

std::vector<double> excitation_distribution(const JointState& state) {
    const int n_max = state.n_max();
    std::vector<double> weights(n_max + 2, 0.0);
    weights[0] = std::norm(state.ground[0]);
    for (int m = 1; m <= n_max + 1; ++m) {
        double w = std::norm(state.excited[m - 1]);
        if (m <= n_max) w += std::norm(state.ground[m]);
        weights[m] = w;
    }
    return weights;
}

Matrix2c reduced_qubit_density(const JointState& state) {
    Matrix2c rho;
    rho(0, 0) = state.excited.squaredNorm();
    rho(1, 1) = state.ground.squaredNorm();
    rho(0, 1) = state.ground.dot(state.excited);  // sum_n e_n conj(g_n)
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

XProjection project_qubit_x(const JointState& state) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    VectorXc plus = inv_sqrt2 * (state.excited + state.ground);
    VectorXc minus = inv_sqrt2 * (state.excited - state.ground);

    XProjection proj{0.0, FieldState(VectorXc::Zero(state.excited.size())),
                     0.0, FieldState(VectorXc::Zero(state.excited.size()))};
    proj.prob_plus = plus.squaredNorm();
    proj.prob_minus = minus.squaredNorm();
    if (proj.prob_plus > 0.0) plus /= std::sqrt(proj.prob_plus);
    if (proj.prob_minus > 0.0) minus /= std::sqrt(proj.prob_minus);
    proj.field_plus = FieldState(std::move(plus));
    proj.field_minus = FieldState(std::move(minus));
    return proj;
}

double mean_photon_number(const FieldState& field) {
    const double total = field.squared_norm();
    if (!(total > 0.0))
        throw std::domain_error("mean_photon_number: field has zero norm");
    double sum = 0.0;
    for (int n = 0; n <= field.n_max(); ++n)
        sum += n * std::norm(field.amplitudes()[n]);
    return sum / total;
}

double field_fidelity(const FieldState& a, const FieldState& b) {
    if (a.n_max() != b.n_max())
        throw std::invalid_argument("field_fidelity: mismatched cutoffs");
    const double na = a.squared_norm();
    const double nb = b.squared_norm();
    if (!(na > 0.0 && nb > 0.0))
        throw std::domain_error("field_fidelity: zero-norm field");
    return std::norm(a.amplitudes().dot(b.amplitudes())) / (na * nb);
}

QuantizedCycleReport run_quantized_cycle(Complex alpha, double omega0, double t, int n_max) {
    const FieldState field = coherent_state(alpha, n_max);
    const JointState evolved = jc_evolve(prepare_with_plus_x(field), omega0, t);

    const double tail = relative_tail_mass(evolved);
    if (tail > kTailTolerance)
        throw TruncationError("run_quantized_cycle: evolved tail mass exceeds tolerance");

    const double n_bar = std::norm(alpha);
    const double theta = omega0 * std::abs(alpha) * t;

    QuantizedCycleReport report{};
    report.theta = theta;
    report.n_bar = n_bar;
    report.analytic_prob_minus = 0.25 * theta * theta;
    report.analytic_gain = 0.5 * theta;
    report.truncation_tail_mass = tail;

    const XProjection proj = project_qubit_x(evolved);
    report.prob_minus = proj.prob_minus;
    report.photon_gain = mean_photon_number(proj.field_plus) - n_bar;

    if (theta == 0.0) {
        report.fidelity_plus_branch = field_fidelity(proj.field_plus, field);
    } else {
        const Complex displaced = alpha + 0.25 * theta / std::conj(alpha);
        report.fidelity_plus_branch =
            field_fidelity(proj.field_plus, coherent_state(displaced, n_max));
    }
    return report;
}

}  // namespace mpe
