// cavity.hpp
// Quantized-drive verification of work extraction: truncated-Fock-space
// Jaynes-Cummings dynamics of qubit + single cavity mode, x-basis
// post-selection of the field, and the small-angle analytic targets the
// numerics are compared against.
//
// The coupling is H = i (hbar Omega0 / 2)(sigma_- a^dag - a sigma_-^dag),
// resonant, written in the frame where the free evolution is removed.  It is
// block diagonal per excitation manifold, so the propagator is applied as
// exact 2x2 rotations with c_n = cos(Omega0 sqrt(n) t / 2) and
// s_n = sin(Omega0 sqrt(n) t / 2); there is no time-stepping error.

#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mpe/qubit.hpp"

namespace mpe {

using VectorXc = Eigen::VectorXcd;

// Raised when a Fock-space cutoff cannot represent the requested state to
// the library's tail-mass tolerance.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Field state in the truncated Fock basis; amplitudes()[n] multiplies |n>.
// Branch states from post-selection may be unnormalized: their squared
// norm is the branch probability.
class FieldState {
  public:
    explicit FieldState(VectorXc amplitudes);

    int n_max() const { return static_cast<int>(amplitudes_.size()) - 1; }
    const VectorXc& amplitudes() const { return amplitudes_; }
    double squared_norm() const { return amplitudes_.squaredNorm(); }

    static FieldState vacuum(int n_max);
    static FieldState fock(int n, int n_max);

  private:
    VectorXc amplitudes_;
};

// Default cutoff for a coherent state of mean photon number n_bar.
int default_fock_cutoff(double n_bar);

// |alpha> = e^{-|alpha|^2/2} sum_n alpha^n/sqrt(n!) |n>, truncated at n_max.
// Requires n_max >= |alpha|^2 + 8|alpha|; throws TruncationError otherwise
// or when the retained tail mass exceeds 1e-10.
FieldState coherent_state(Complex alpha, int n_max);

// Joint qubit (x) field state: excited[n] multiplies |1,n>, ground[n] |0,n>.
struct JointState {
    VectorXc excited;
    VectorXc ground;

    double squared_norm() const { return excited.squaredNorm() + ground.squaredNorm(); }
    int n_max() const { return static_cast<int>(excited.size()) - 1; }
};

// (|1> + |0>)/sqrt(2) (x) field.
JointState prepare_with_plus_x(const FieldState& field);

// Exact Jaynes-Cummings propagator for duration t.
JointState jc_evolve(const JointState& state, double omega0, double t);

// Mean of a^dag a + sigma_+ sigma_-.
double total_excitation(const JointState& state);

// Probability weight per total excitation number m = 0 .. n_max + 1;
// invariant under jc_evolve.
std::vector<double> excitation_distribution(const JointState& state);

// Reduced 2x2 qubit density matrix (same (|1>, |0>) ordering as QubitState).
Matrix2c reduced_qubit_density(const JointState& state);

// sigma_x readout of the qubit: unnormalized branches (e +/- g)/sqrt(2),
// returned normalized together with their probabilities.
struct XProjection {
    double prob_plus;
    FieldState field_plus;
    double prob_minus;
    FieldState field_minus;  // zero vector when prob_minus vanishes
};

XProjection project_qubit_x(const JointState& state);

// <n> of the normalized field; throws std::domain_error on zero norm.
double mean_photon_number(const FieldState& field);

// |<a|b>|^2 of the normalized fields.
double field_fidelity(const FieldState& a, const FieldState& b);

// One quantized engine cycle |+x, alpha> -> JC evolution -> x readout,
// with the three small-angle analytic targets: the -x probability
// theta^2/4, the +x-branch photon gain theta/2, and the displaced coherent
// state alpha + theta/(4 alpha) approximating the +x branch.
struct QuantizedCycleReport {
    double theta;                 // Omega0 |alpha| t
    double n_bar;                 // |alpha|^2
    double prob_minus;
    double analytic_prob_minus;   // theta^2/4
    double photon_gain;           // <n>_+ - n_bar
    double analytic_gain;         // theta/2
    double fidelity_plus_branch;  // vs |alpha + theta/(4 alpha)>
    double truncation_tail_mass;  // top-Fock-level population after evolution
};

QuantizedCycleReport run_quantized_cycle(Complex alpha, double omega0, double t, int n_max);

}  // namespace mpe
