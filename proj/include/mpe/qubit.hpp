// qubit.hpp
// Two-level-system states, Bloch-sphere measurement bases, unitary Rabi
// evolution in the rotating frame, projective measurement and the entropy
// and energy functionals built on them.
//
// Amplitude ordering convention, used everywhere in this library: index 0
// is the excited state |1>, index 1 is the ground state |0>.  The bare
// Hamiltonian is H0 = |1><1| and all energies are dimensionless, expressed
// in units of one qubit quantum (hbar * omega0).

#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace mpe {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using Vector3d = Eigen::Vector3d;

// Measurement outcome tag: plus = projected onto |+n>, minus = onto |-n>.
enum class Outcome { plus, minus };

// Unit vector n on the Bloch sphere, defining the measurement basis
// {|+n>, |-n>} with
//   |+n> = e^{-i phi/2} cos(theta/2) |1> + e^{i phi/2} sin(theta/2) |0>.
//
// Cartesian components are cached at construction; the canonical axes
// (x_axis() etc.) carry exact 0/1 components instead of cos(pi/2)-sized
// roundoff, so closed-form results that vanish on them vanish exactly.
class BlochAxis {
  public:
    // theta_n in [0, pi]; phi_n is reduced into [0, 2*pi).
    BlochAxis(double theta_n, double phi_n);

    double theta() const { return theta_n_; }
    double phi() const { return phi_n_; }

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    // -n = (pi - theta_n, phi_n + pi); Cartesian components are negated exactly.
    BlochAxis antipode() const;

    static BlochAxis x_axis();
    static BlochAxis minus_x_axis();
    static BlochAxis y_axis();
    static BlochAxis z_axis();

  private:
    BlochAxis(double theta_n, double phi_n, double x, double y, double z)
        : theta_n_(theta_n), phi_n_(phi_n), x_(x), y_(y), z_(z) {}

    double theta_n_;
    double phi_n_;
    double x_, y_, z_;
};

// Qubit state.  The 2x2 density matrix is the source of truth; pure states
// are rank-one density matrices.  Construction validates hermiticity,
// unit trace and spectrum, so every QubitState in circulation is physical.
class QubitState {
  public:
    static QubitState from_density(const Matrix2c& rho);
    static QubitState from_amplitudes(Complex excited, Complex ground);

    static QubitState excited();          // |1><1|
    static QubitState ground();           // |0><0|
    static QubitState maximally_mixed();  // I/2
    static QubitState plus(const BlochAxis& axis);   // |+n><+n|
    static QubitState minus(const BlochAxis& axis);  // |-n><-n|

    const Matrix2c& density() const { return rho_; }

    // (<sigma_x>, <sigma_y>, <sigma_z>); length <= 1, = 1 for pure states.
    Vector3d bloch_vector() const;

    double purity() const;  // Tr[rho^2]
    bool is_pure(double tol = 1e-9) const;

  private:
    explicit QubitState(Matrix2c rho) : rho_(std::move(rho)) {}

    Matrix2c rho_;
};

struct MeasurementResult {
    Outcome outcome;
    QubitState post_state;
    double probability;  // probability of the realized outcome
};

// Pure states |+n>, |-n> of the axis basis; <+n|-n> = 0.
std::pair<QubitState, QubitState> basis_states(const BlochAxis& axis);

// Rotating-frame drive: applies exp(-i theta sigma_y / 2).  theta is the
// Rabi angle Omega * tau_w; any real value is accepted.
QubitState rabi_evolve(const QubitState& state, double theta);

// Born probability p+ = <+n| rho |+n>, clamped to [0, 1].
double plus_probability(const QubitState& state, const BlochAxis& axis);

// Projective measurement along the axis.  Outcome is plus iff
// rng_draw < p+; the post state is the exact basis state of the outcome.
MeasurementResult measure(const QubitState& state, const BlochAxis& axis, double rng_draw);

// Non-selective measurement channel: removes coherences in the axis basis.
QubitState dephase(const QubitState& state, const BlochAxis& axis);

// Tr[rho |1><1|] in units of hbar*omega0; always in [0, 1].
double internal_energy(const QubitState& state);

// Binary Shannon entropy H2(p) in bits; endpoints return exactly 0.
// Throws std::domain_error outside [0, 1].
double shannon_entropy_bits(double p);

// Uhlmann fidelity; for qubits F = Tr[rho sigma] + 2 sqrt(det rho det sigma).
double fidelity(const QubitState& a, const QubitState& b);

double trace_distance(const Matrix2c& a, const Matrix2c& b);
double trace_distance(const QubitState& a, const QubitState& b);

}  // namespace mpe
