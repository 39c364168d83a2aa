#include "mpe/qubit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mpe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phi(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;  // fmod can land exactly on 2*pi after the add
    return w;
}

// Amplitudes of |+n> in the (|1>, |0>) ordering.
Vector2c plus_amplitudes(const BlochAxis& axis) {
    const double half_theta = 0.5 * axis.theta();
    const Complex phase = std::polar(1.0, 0.5 * axis.phi());
    return {std::conj(phase) * std::cos(half_theta), phase * std::sin(half_theta)};
}

Matrix2c projector(const Vector2c& psi) {
    return psi * psi.adjoint();
}

double clamp01(double p) {
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

// Eigenvalues of a 2x2 Hermitian matrix, closed form.
std::pair<double, double> hermitian_eigenvalues(const Matrix2c& m) {
    const double half_trace = 0.5 * std::real(m(0, 0) + m(1, 1));
    const double det = std::real(m(0, 0)) * std::real(m(1, 1)) - std::norm(m(0, 1));
    const double disc = std::sqrt(std::max(0.0, half_trace * half_trace - det));
    return {half_trace - disc, half_trace + disc};
}

}  // namespace

BlochAxis::BlochAxis(double theta_n, double phi_n) {
    if (!std::isfinite(theta_n) || !std::isfinite(phi_n))
        throw std::invalid_argument("BlochAxis: angles must be finite");
    // Absorb sub-nanoradian excursions from grid arithmetic like k*pi/180.
    constexpr double slack = 1e-9;
    if (theta_n < -slack || theta_n > kPi + slack)
        throw std::invalid_argument("BlochAxis: theta_n must lie in [0, pi]");
    theta_n_ = std::min(std::max(theta_n, 0.0), kPi);
    phi_n_ = wrap_phi(phi_n);
    x_ = std::sin(theta_n_) * std::cos(phi_n_);
    y_ = std::sin(theta_n_) * std::sin(phi_n_);
    z_ = std::cos(theta_n_);
}

BlochAxis BlochAxis::antipode() const {
    return BlochAxis(kPi - theta_n_, wrap_phi(phi_n_ + kPi), -x_, -y_, -z_);
}

BlochAxis BlochAxis::x_axis() { return BlochAxis(kPi / 2, 0.0, 1.0, 0.0, 0.0); }
BlochAxis BlochAxis::minus_x_axis() { return BlochAxis(kPi / 2, kPi, -1.0, 0.0, 0.0); }
BlochAxis BlochAxis::y_axis() { return BlochAxis(kPi / 2, kPi / 2, 0.0, 1.0, 0.0); }
BlochAxis BlochAxis::z_axis() { return BlochAxis(0.0, 0.0, 0.0, 0.0, 1.0); }

QubitState QubitState::from_density(const Matrix2c& rho) {
    constexpr double tol = 1e-12;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("QubitState: density matrix is not Hermitian");
    const double trace = std::real(rho(0, 0) + rho(1, 1));
    if (std::abs(trace - 1.0) > tol)
        throw std::invalid_argument("QubitState: density matrix trace is not 1");
    Matrix2c sym = 0.5 * (rho + rho.adjoint());
    const auto [lo, hi] = hermitian_eigenvalues(sym);
    if (lo < -tol || hi > 1.0 + tol)
        throw std::invalid_argument("QubitState: density matrix is not positive semidefinite");
    return QubitState(std::move(sym));
}

QubitState QubitState::from_amplitudes(Complex excited, Complex ground) {
    Vector2c psi(excited, ground);
    const double n2 = psi.squaredNorm();
    if (n2 <= 0.0 || !std::isfinite(n2))
        throw std::invalid_argument("QubitState: amplitudes must have nonzero norm");
    psi /= std::sqrt(n2);
    return QubitState(projector(psi));
}

QubitState QubitState::excited() {
    return QubitState((Matrix2c() << 1, 0, 0, 0).finished());
}

QubitState QubitState::ground() {
    return QubitState((Matrix2c() << 0, 0, 0, 1).finished());
}

QubitState QubitState::maximally_mixed() {
    return QubitState(0.5 * Matrix2c::Identity());
}

QubitState QubitState::plus(const BlochAxis& axis) {
    return QubitState(projector(plus_amplitudes(axis)));
}

QubitState QubitState::minus(const BlochAxis& axis) {
    return QubitState(projector(plus_amplitudes(axis.antipode())));
}

Vector3d QubitState::bloch_vector() const {
    const double x = 2.0 * std::real(rho_(0, 1));
    const double y = -2.0 * std::imag(rho_(0, 1));
    const double z = std::real(rho_(0, 0) - rho_(1, 1));
    return {x, y, z};
}

double QubitState::purity() const {
    return std::real((rho_ * rho_).trace());
}

bool QubitState::is_pure(double tol) const {
    return std::abs(purity() - 1.0) <= tol;
}

std::pair<QubitState, QubitState> basis_states(const BlochAxis& axis) {
    return {QubitState::plus(axis), QubitState::minus(axis)};
}

QubitState rabi_evolve(const QubitState& state, double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    Matrix2c u;
    u << c, -s, s, c;  // exp(-i theta sigma_y / 2) in the (|1>, |0>) ordering
    Matrix2c rho = u * state.density() * u.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return QubitState::from_density(rho);
}

double plus_probability(const QubitState& state, const BlochAxis& axis) {
    const Vector2c psi = plus_amplitudes(axis);
    double p = clamp01(std::real(psi.dot(state.density() * psi)));
    // Projector arithmetic leaves O(eps) residue on orthogonal states; snap
    // it away so degenerate measurements are exactly deterministic.
    constexpr double snap = 1e-14;
    if (p < snap) p = 0.0;
    if (p > 1.0 - snap) p = 1.0;
    return p;
}

MeasurementResult measure(const QubitState& state, const BlochAxis& axis, double rng_draw) {
    if (!(rng_draw >= 0.0 && rng_draw < 1.0))
        throw std::invalid_argument("measure: rng_draw must lie in [0, 1)");
    const double p_plus = plus_probability(state, axis);
    if (rng_draw < p_plus)
        return {Outcome::plus, QubitState::plus(axis), p_plus};
    return {Outcome::minus, QubitState::minus(axis), clamp01(1.0 - p_plus)};
}

QubitState dephase(const QubitState& state, const BlochAxis& axis) {
    const double p_plus = plus_probability(state, axis);
    const Matrix2c rho = p_plus * QubitState::plus(axis).density() +
                         (1.0 - p_plus) * QubitState::minus(axis).density();
    return QubitState::from_density(rho);
}

double internal_energy(const QubitState& state) {
    return clamp01(std::real(state.density()(0, 0)));
}

double shannon_entropy_bits(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("shannon_entropy_bits: p must lie in [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    const double q = 1.0 - p;
    return -(p * std::log2(p) + q * std::log2(q));
}

double fidelity(const QubitState& a, const QubitState& b) {
    const Matrix2c& ra = a.density();
    const Matrix2c& rb = b.density();
    const double overlap = std::real((ra * rb).trace());
    const double det_a = std::max(0.0, std::real(ra.determinant()));
    const double det_b = std::max(0.0, std::real(rb.determinant()));
    return clamp01(overlap + 2.0 * std::sqrt(det_a * det_b));
}

double trace_distance(const Matrix2c& a, const Matrix2c& b) {
    const Matrix2c d = a - b;
    const auto [lo, hi] = hermitian_eigenvalues(0.5 * (d + d.adjoint()));
    return 0.5 * (std::abs(lo) + std::abs(hi));
}

double trace_distance(const QubitState& a, const QubitState& b) {
    return trace_distance(a.density(), b.density());
}

}  // namespace mpe
