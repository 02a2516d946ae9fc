// bogoliubov.hpp — Coproducts for additive observables, the q-deformed
// non-commutative coproduct, and the Bogoliubov transformation realizing the
// doubling map A -> A x A on truncated spaces.

#pragma once

#include "tfd/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace tfd {

// --------------------------- DeformationParam --------------------------------

// The deformation label: Bogoliubov angle theta with q = e^theta kept
// consistent (real positive q, the boson branch).
struct DeformationParam {
    double theta = 0.0;
    double q = 1.0;

    static DeformationParam from_theta(double theta) {
        if (!std::isfinite(theta)) throw std::invalid_argument("DeformationParam: theta must be finite");
        return DeformationParam{theta, std::exp(theta)};
    }
    static DeformationParam from_q(double q) {
        if (!(q > 0.0) || !std::isfinite(q)) {
            throw std::invalid_argument("DeformationParam: q must be positive and finite");
        }
        return DeformationParam{std::log(q), q};
    }

    bool undeformed() const { return theta == 0.0; }
};

// ----------------------------- coproducts ------------------------------------

// Delta(op) = op x 1 + 1 x op (how additive observables extend to two modes).
inline FockOperator commutative_coproduct(const FockOperator& op) {
    if (op.space().is_doubled()) {
        throw std::invalid_argument("commutative_coproduct: operator is already on a doubled space");
    }
    const FockSpace d = FockSpace::doubled(op.space().n_max);
    return embed_nontilde(op, d) + embed_tilde(op, d);
}

// Delta_q(op) = q (op x 1) + q^-1 (1 x op); not swap-symmetric unless q = 1.
inline FockOperator deformed_coproduct(const FockOperator& op, const DeformationParam& params) {
    if (op.space().is_doubled()) {
        throw std::invalid_argument("deformed_coproduct: operator is already on a doubled space");
    }
    if (!(params.q > 0.0)) throw std::invalid_argument("deformed_coproduct: q must be positive");
    const FockSpace d = FockSpace::doubled(op.space().n_max);
    return params.q * embed_nontilde(op, d) + (1.0 / params.q) * embed_tilde(op, d);
}

// Conjugate by the tensor-factor swap |n,m~> -> |m,n~>. Witnesses the
// (non-)commutativity of a coproduct.
inline FockOperator swap_conjugate(const FockOperator& op) {
    const FockSpace& s = op.space();
    if (!s.is_doubled()) {
        throw std::invalid_argument("swap_conjugate: expects a doubled space");
    }
    const int L = s.levels();
    Matrix out(s.dim(), s.dim());
    for (int n = 0; n < L; ++n)
        for (int m = 0; m < L; ++m)
            for (int p = 0; p < L; ++p)
                for (int q = 0; q < L; ++q)
                    out(s.index(n, m), s.index(p, q)) = op.matrix()(s.index(m, n), s.index(q, p));
    return FockOperator(s, std::move(out));
}

// --------------------------- Bogoliubov transform ----------------------------

struct BogoliubovPair {
    FockOperator a_theta;        // A(theta)
    FockOperator a_tilde_theta;  // A~(theta)
    DeformationParam params;
};

// A(theta) = A cosh - A~+ sinh,  A~(theta) = A~ cosh - A+ sinh.
inline BogoliubovPair bogoliubov(double theta, const FockSpace& space) {
    if (!space.is_doubled()) {
        throw std::invalid_argument("bogoliubov: expects a doubled space");
    }
    const double c = std::cosh(theta);
    const double s = std::sinh(theta);
    auto a = make_annihilator(space, Mode::plain);
    auto a_tilde = make_annihilator(space, Mode::tilde);
    return BogoliubovPair{
        c * a - s * a_tilde.adjoint(),
        c * a_tilde - s * a.adjoint(),
        DeformationParam::from_theta(theta)};
}

// G = -i (A+ A~+ - A A~), self-adjoint generator of the transformation.
inline FockOperator bogoliubov_generator(const FockSpace& space) {
    if (!space.is_doubled()) {
        throw std::invalid_argument("bogoliubov_generator: expects a doubled space");
    }
    auto a = make_annihilator(space, Mode::plain);
    auto a_tilde = make_annihilator(space, Mode::tilde);
    return Complex(0.0, -1.0) * (a.adjoint() * a_tilde.adjoint() - a * a_tilde);
}

// Recover (A, A~): A = A(theta) cosh + A~(theta)+ sinh, tilde analogue.
// This is the arrow-reversing direction of the transform.
inline std::pair<FockOperator, FockOperator> inverse_bogoliubov(const BogoliubovPair& pair) {
    const double c = std::cosh(pair.params.theta);
    const double s = std::sinh(pair.params.theta);
    return {c * pair.a_theta + s * pair.a_tilde_theta.adjoint(),
            c * pair.a_tilde_theta + s * pair.a_theta.adjoint()};
}

// Action of i G on a doubled-space vector without materializing G:
// i G |n,m~> = sqrt((n+1)(m+1)) |n+1,m+1~> - sqrt(n m) |n-1,m-1~>.
inline Vector generator_i_apply(const FockSpace& space, const Vector& v) {
    if (!space.is_doubled() || v.size() != space.dim()) {
        throw std::invalid_argument("generator_i_apply: expects a doubled-space vector");
    }
    const int L = space.levels();
    Vector out = Vector::Zero(v.size());
    for (int n = 0; n < L; ++n) {
        for (int m = 0; m < L; ++m) {
            const Complex x = v(space.index(n, m));
            if (x == Complex(0.0)) continue;
            if (n + 1 < L && m + 1 < L) {
                out(space.index(n + 1, m + 1)) +=
                    std::sqrt(double(n + 1) * double(m + 1)) * x;
            }
            if (n > 0 && m > 0) {
                out(space.index(n - 1, m - 1)) -= std::sqrt(double(n) * double(m)) * x;
            }
        }
    }
    return out;
}

// exp(i theta G) v by scaled Taylor series on the matrix-free action above.
// Lets the working space be padded far beyond the levels of interest without
// ever forming a dim x dim matrix.
inline Vector generator_exp_apply(const FockSpace& space, double theta, const Vector& v) {
    const double norm1 = 2.0 * std::abs(theta) * space.levels();  // bound on ||theta G||_1
    const int s = std::max(1, static_cast<int>(std::ceil(norm1 / 2.0)));
    Vector w = v;
    for (int step = 0; step < s; ++step) {
        Vector acc = w;
        Vector term = w;
        for (int k = 1; k <= 64; ++k) {
            term = generator_i_apply(space, term) * (theta / double(s) / double(k));
            acc += term;
            if (term.norm() <= 1e-18 * acc.norm()) break;
        }
        w = acc;
    }
    return w;
}

// Entries of e^{i theta G} op e^{-i theta G} on the block of levels
// {|n,m~> : n,m <= block}, evaluated column-by-column with exp_apply so the
// space can be padded well beyond the block of interest. Entry (i,j) is
// w_i^+ op w_j with w_j = e^{-i theta G}|j>.
inline Matrix conjugated_block(const FockOperator& op, const FockOperator& generator,
                               double theta, int block) {
    const FockSpace& s = op.space();
    if (!s.is_doubled()) {
        throw std::invalid_argument("conjugated_block: expects a doubled space");
    }
    if (block < 0 || block > s.n_max) {
        throw std::out_of_range("conjugated_block: block exceeds n_max");
    }
    const int b = block + 1;
    Matrix w(s.dim(), b * b);
    FockOperator mig = Complex(0.0, -theta) * generator;
    for (int n = 0; n <= block; ++n) {
        for (int m = 0; m <= block; ++m) {
            w.col(n * b + m) = exp_apply(mig, basis_state(s, n, m));
        }
    }
    return w.adjoint() * (op.matrix() * w);
}

// The same block of an operator given directly (reference side of the check).
inline Matrix operator_block(const FockOperator& op, int block) {
    const FockSpace& s = op.space();
    const int b = block + 1;
    Matrix out(b * b, b * b);
    for (int n = 0; n <= block; ++n)
        for (int m = 0; m <= block; ++m)
            for (int p = 0; p <= block; ++p)
                for (int q = 0; q <= block; ++q)
                    out(n * b + m, p * b + q) = op.matrix()(s.index(n, m), s.index(p, q));
    return out;
}

} // namespace tfd
