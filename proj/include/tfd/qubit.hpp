// qubit.hpp — Two-level system: mixed-state superpositions, their unitary
// time evolution, the free-energy generator with its TS mixing term, and the
// tilde-doubling with reduced density matrices.
//
// Amplitude vectors are ordered (amplitude of |0>, amplitude of |1>).

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

namespace tfd {

using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;

struct TwoLevelParams {
    double omega1;          // energy of |0>
    double omega2;          // energy of |1>, omega2 != omega1 for nontrivial mixing
    double theta_mix;       // mixing angle
    double gamma1 = 0.0;    // phases, gamma1 = gamma2 + n pi
    double gamma2 = 0.0;

    void validate() const {
        if (omega1 == omega2) {
            throw std::invalid_argument("TwoLevelParams: omega1 must differ from omega2");
        }
        const double k = (gamma1 - gamma2) / M_PI;
        if (std::abs(k - std::round(k)) > 1e-12) {
            throw std::invalid_argument("TwoLevelParams: gamma1 - gamma2 must be a multiple of pi");
        }
    }
};

// The orthonormal superposition pair phi = alpha|0> + beta|1>,
// psi = -beta*|0> + alpha*|1>.
struct QubitPair {
    Vector2 phi;
    Vector2 psi;
};

// Pauli matrices in the 1/2-prefactor convention, written in the (|0>,|1>)
// amplitude ordering.
inline Matrix2 pauli1() {
    Matrix2 m;
    m << 0.0, 0.5, 0.5, 0.0;
    return m;
}
inline Matrix2 pauli2() {
    Matrix2 m;
    m << std::complex<double>(0, 0), std::complex<double>(0, 0.5),
         std::complex<double>(0, -0.5), std::complex<double>(0, 0);
    return m;
}
inline Matrix2 pauli3() {
    Matrix2 m;
    m << -0.5, 0.0, 0.0, 0.5;
    return m;
}

inline Matrix2 hamiltonian_matrix(const TwoLevelParams& p) {
    Matrix2 h = Matrix2::Zero();
    h(0, 0) = p.omega1;
    h(1, 1) = p.omega2;
    return h;
}

inline QubitPair mix(const TwoLevelParams& p) {
    p.validate();
    const std::complex<double> alpha =
        std::exp(std::complex<double>(0.0, p.gamma1)) * std::cos(p.theta_mix);
    const std::complex<double> beta =
        std::exp(std::complex<double>(0.0, p.gamma2)) * std::sin(p.theta_mix);
    QubitPair q;
    q.phi << alpha, beta;
    q.psi << -std::conj(beta), std::conj(alpha);
    return q;
}

// omega_phi_psi = (omega2 - omega1)/2 sin(2 theta); equals <psi(t)|i d_t|phi(t)>
// for all t, and is symmetric in phi <-> psi.
inline double mixing_frequency(const TwoLevelParams& p) {
    p.validate();
    return 0.5 * (p.omega2 - p.omega1) * std::sin(2.0 * p.theta_mix);
}

// The mixed-basis evolution matrix: rows are the (|0>,|1>) amplitudes of
// phi(t), psi(t) for the gamma = 0 pair. Each amplitude carries its energy
// phase; with a global e^{-i omega1 t} pulled out, the
// e^{-i(omega2-omega1)t} factor sits on the |1> column. Placing it on both
// off-diagonal entries instead would break unitarity and the pair's
// orthonormality.
inline Matrix2 evolution_matrix(const TwoLevelParams& p, double t) {
    p.validate();
    if (!std::isfinite(t)) throw std::invalid_argument("evolution_matrix: t must be finite");
    const double c = std::cos(p.theta_mix), s = std::sin(p.theta_mix);
    const std::complex<double> g1 = std::exp(std::complex<double>(0.0, -p.omega1 * t));
    const std::complex<double> g2 = std::exp(std::complex<double>(0.0, -p.omega2 * t));
    Matrix2 u;
    u << c * g1, s * g2,
        -s * g1, c * g2;
    return u;
}

// Schroedinger evolution of the pair: each (|0>,|1>) amplitude picks up its
// energy phase.
inline QubitPair evolve(const QubitPair& pair, const TwoLevelParams& p, double t) {
    p.validate();
    if (!std::isfinite(t)) throw std::invalid_argument("evolve: t must be finite");
    const std::complex<double> g1 = std::exp(std::complex<double>(0.0, -p.omega1 * t));
    const std::complex<double> g2 = std::exp(std::complex<double>(0.0, -p.omega2 * t));
    QubitPair out;
    out.phi << g1 * pair.phi(0), g2 * pair.phi(1);
    out.psi << g1 * pair.psi(0), g2 * pair.psi(1);
    return out;
}

// F = H - omega_phi_psi sigma1; hermitian by construction, reduces to H when
// the mixing angle vanishes.
inline Matrix2 free_energy_operator(const TwoLevelParams& p) {
    return hamiltonian_matrix(p) - mixing_frequency(p) * pauli1();
}

// TS = omega_phi_psi (|phi(t)><psi(t)| + |psi(t)><phi(t)|), the term driving
// oscillations between the pair members.
inline Matrix2 ts_operator(const TwoLevelParams& p, double t) {
    const QubitPair q = evolve(mix(p), p, t);
    const Matrix2 cross = q.phi * q.psi.adjoint() + q.psi * q.phi.adjoint();
    return mixing_frequency(p) * cross;
}

// Matrix elements <xi(t)| H |xi'(t)> over the moving pair (phi, psi); this is
// the generator of the pair dynamics expressed in the pair frame, constant in
// t, with the mixing frequency on the off-diagonal.
inline Matrix2 pair_frame_generator(const TwoLevelParams& p) {
    p.validate();
    const QubitPair q = mix(p);
    const Matrix2 h = hamiltonian_matrix(p);
    Matrix2 out;
    out << q.phi.dot(h * q.phi), q.phi.dot(h * q.psi),
           q.psi.dot(h * q.phi), q.psi.dot(h * q.psi);
    return out;
}

// ----------------------------- doubling ---------------------------------------

// |xi> = a|0> + b|1>  ->  |xi, xi~> = a|0,0~> + b|1,1~> in the 4-dimensional
// doubled space (basis order |00~>, |01~>, |10~>, |11~>).
inline Vector4 double_state(const Vector2& xi) {
    if (std::abs(xi.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("double_state: state is not normalized");
    }
    Vector4 v = Vector4::Zero();
    v(0) = xi(0);
    v(3) = xi(1);
    return v;
}

// Reduced density matrix of the system (trace out tilde) or of the tilde copy.
inline Matrix2 reduced_density(const Vector4& doubled, bool trace_out_tilde) {
    Matrix2 rho = Matrix2::Zero();
    auto idx = [](int n, int m) { return 2 * n + m; };
    for (int n = 0; n < 2; ++n)
        for (int p = 0; p < 2; ++p)
            for (int k = 0; k < 2; ++k) {
                if (trace_out_tilde) {
                    rho(n, p) += doubled(idx(n, k)) * std::conj(doubled(idx(p, k)));
                } else {
                    rho(n, p) += doubled(idx(k, n)) * std::conj(doubled(idx(k, p)));
                }
            }
    return rho;
}

inline double von_neumann_entropy(const Matrix2& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix2> solver(rho);
    double s = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double lam = solver.eigenvalues()(i);
        if (lam > 1e-15) s -= lam * std::log(lam);
    }
    return s;
}

struct DoubledEntropy {
    double system;
    double tilde;
};

// Entropies of both reductions of the doubled pure state built from xi.
inline DoubledEntropy doubled_entropy(const Vector2& xi) {
    const Vector4 v = double_state(xi);
    return {von_neumann_entropy(reduced_density(v, true)),
            von_neumann_entropy(reduced_density(v, false))};
}

inline DoubledEntropy doubled_entropy(const QubitPair& pair) {
    return doubled_entropy(pair.phi);
}

} // namespace tfd
