// fock.hpp — Truncated bosonic Fock-space linear algebra: ladder operators on
// single and doubled (system x tilde) mode spaces, commutators, expectation
// values, and matrix exponentials.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace tfd {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Which tensor factor of a doubled space an operator acts on.
enum class Mode { plain, tilde };

// ----------------------------- FockSpace ------------------------------------

// A truncated Fock space: levels 0..n_max per mode, one or two modes.
// The doubled space is ordered non-tilde (x) tilde with basis index
// n * (n_max+1) + m for |n, m~>.
struct FockSpace {
    int n_max = 1;
    int mode_count = 1;

    static FockSpace single(int n_max) {
        check_n_max(n_max);
        return FockSpace{n_max, 1};
    }
    static FockSpace doubled(int n_max) {
        check_n_max(n_max);
        return FockSpace{n_max, 2};
    }

    bool is_doubled() const { return mode_count == 2; }

    int levels() const { return n_max + 1; }

    int dim() const {
        return mode_count == 1 ? levels() : levels() * levels();
    }

    // Basis index of |n> or |n, m~>.
    int index(int n, int m = -1) const {
        if (n < 0 || n > n_max) throw std::out_of_range("FockSpace: level out of range");
        if (mode_count == 1) {
            if (m >= 0) throw std::invalid_argument("FockSpace: tilde level on single-mode space");
            return n;
        }
        if (m < 0 || m > n_max) throw std::out_of_range("FockSpace: tilde level out of range");
        return n * levels() + m;
    }

    friend bool operator==(const FockSpace& a, const FockSpace& b) {
        return a.n_max == b.n_max && a.mode_count == b.mode_count;
    }

private:
    static void check_n_max(int n_max) {
        if (n_max < 1) throw std::invalid_argument("FockSpace: n_max must be >= 1");
    }
};

// ----------------------------- FockOperator ---------------------------------

// Dense complex linear operator on a truncated Fock space. Immutable after
// construction; all algebra below returns new values.
class FockOperator {
public:
    FockOperator(FockSpace space, Matrix entries)
        : space_(space), m_(std::move(entries)) {
        if (m_.rows() != space_.dim() || m_.cols() != space_.dim()) {
            throw std::invalid_argument("FockOperator: entry matrix does not match space dimension");
        }
    }

    const FockSpace& space() const { return space_; }
    const Matrix& matrix() const { return m_; }

    FockOperator adjoint() const { return FockOperator(space_, m_.adjoint()); }

    bool same_space(const FockOperator& other) const { return space_ == other.space_; }

    friend FockOperator operator+(const FockOperator& a, const FockOperator& b) {
        require_same_space(a, b, "operator+");
        return FockOperator(a.space_, a.m_ + b.m_);
    }
    friend FockOperator operator-(const FockOperator& a, const FockOperator& b) {
        require_same_space(a, b, "operator-");
        return FockOperator(a.space_, a.m_ - b.m_);
    }
    friend FockOperator operator*(Complex c, const FockOperator& a) {
        return FockOperator(a.space_, c * a.m_);
    }
    friend FockOperator operator*(double c, const FockOperator& a) {
        return FockOperator(a.space_, c * a.m_);
    }
    friend FockOperator operator-(const FockOperator& a) {
        return FockOperator(a.space_, -a.m_);
    }
    friend FockOperator operator*(const FockOperator& a, const FockOperator& b);

private:
    static void require_same_space(const FockOperator& a, const FockOperator& b, const char* what) {
        if (!a.same_space(b)) {
            throw std::invalid_argument(std::string(what) + ": operands live on different spaces");
        }
    }

    FockSpace space_;
    Matrix m_;
};

namespace detail {

inline double fill_fraction(const Matrix& m) {
    const Eigen::Index nz = (m.array() != Complex(0)).count();
    return static_cast<double>(nz) / static_cast<double>(m.size());
}

// Ladder operators and their low-order products are extremely sparse; dense
// GEMM at doubled dimensions (~10^3) dominates runtime otherwise.
inline Matrix adaptive_product(const Matrix& a, const Matrix& b) {
    constexpr double kSparseCutoff = 0.10;
    if (a.rows() >= 64 && fill_fraction(a) < kSparseCutoff && fill_fraction(b) < kSparseCutoff) {
        Eigen::SparseMatrix<Complex> sa = a.sparseView(1.0, 0.0);
        Eigen::SparseMatrix<Complex> sb = b.sparseView(1.0, 0.0);
        Eigen::SparseMatrix<Complex> sc = sa * sb;
        return Matrix(sc);
    }
    return a * b;
}

} // namespace detail

inline FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    if (!a.same_space(b)) {
        throw std::invalid_argument("operator*: operands live on different spaces");
    }
    return FockOperator(a.space(), detail::adaptive_product(a.matrix(), b.matrix()));
}

// ------------------------- constructors -------------------------------------

namespace detail {

inline Matrix single_mode_annihilator(int n_max) {
    Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

} // namespace detail

// a (plain) or a~ = I (x) a (tilde). The adjoint is the creation operator.
inline FockOperator make_annihilator(const FockSpace& space, Mode which = Mode::plain) {
    const Matrix a = detail::single_mode_annihilator(space.n_max);
    if (!space.is_doubled()) {
        if (which == Mode::tilde) {
            throw std::invalid_argument("make_annihilator: tilde mode requires a doubled space");
        }
        return FockOperator(space, a);
    }
    const Matrix id = Matrix::Identity(space.levels(), space.levels());
    Matrix m = (which == Mode::plain) ? Eigen::kroneckerProduct(a, id).eval()
                                      : Eigen::kroneckerProduct(id, a).eval();
    return FockOperator(space, std::move(m));
}

inline FockOperator make_creator(const FockSpace& space, Mode which = Mode::plain) {
    return make_annihilator(space, which).adjoint();
}

inline FockOperator identity_operator(const FockSpace& space) {
    return FockOperator(space, Matrix::Identity(space.dim(), space.dim()));
}

inline FockOperator zero_operator(const FockSpace& space) {
    return FockOperator(space, Matrix::Zero(space.dim(), space.dim()));
}

inline FockOperator number_operator(const FockSpace& space, Mode which = Mode::plain) {
    return make_creator(space, which) * make_annihilator(space, which);
}

// Embed a single-mode operator as op (x) I on the doubled space with the same
// truncation.
inline FockOperator embed_nontilde(const FockOperator& op, const FockSpace& doubled) {
    if (op.space().is_doubled()) {
        throw std::invalid_argument("embed_nontilde: operator is already on a doubled space");
    }
    if (!doubled.is_doubled() || doubled.n_max != op.space().n_max) {
        throw std::invalid_argument("embed_nontilde: target must be the doubled space at the same n_max");
    }
    const Matrix id = Matrix::Identity(doubled.levels(), doubled.levels());
    return FockOperator(doubled, Eigen::kroneckerProduct(op.matrix(), id).eval());
}

inline FockOperator embed_tilde(const FockOperator& op, const FockSpace& doubled) {
    if (op.space().is_doubled()) {
        throw std::invalid_argument("embed_tilde: operator is already on a doubled space");
    }
    if (!doubled.is_doubled() || doubled.n_max != op.space().n_max) {
        throw std::invalid_argument("embed_tilde: target must be the doubled space at the same n_max");
    }
    const Matrix id = Matrix::Identity(doubled.levels(), doubled.levels());
    return FockOperator(doubled, Eigen::kroneckerProduct(id, op.matrix()).eval());
}

// Basis kets.
inline Vector basis_state(const FockSpace& space, int n, int m = -1) {
    Vector v = Vector::Zero(space.dim());
    v(space.index(n, m)) = Complex(1.0, 0.0);
    return v;
}

// ------------------------- operations ---------------------------------------

inline FockOperator commutator(const FockOperator& x, const FockOperator& y) {
    if (!x.same_space(y)) {
        throw std::invalid_argument("commutator: operands live on different spaces");
    }
    return x * y - y * x;
}

// <state|op|state>; the state must be normalized to 1e-12.
inline Complex expectation(const Vector& state, const FockOperator& op) {
    if (state.size() != op.space().dim()) {
        throw std::invalid_argument("expectation: state dimension does not match operator space");
    }
    if (std::abs(state.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("expectation: state is not normalized");
    }
    return state.dot(op.matrix() * state);
}

// <state|(op (x) I)|state> for a doubled-space state and a single-mode
// operator, without materializing the Kronecker product: reshape the state
// as a levels x levels matrix V (V(n,m) = amplitude of |n, m~>) and contract.
inline Complex expectation_nontilde(const Vector& doubled_state, const FockOperator& op) {
    if (op.space().is_doubled()) {
        throw std::invalid_argument("expectation_nontilde: operator must be single-mode");
    }
    const int L = op.space().levels();
    if (doubled_state.size() != static_cast<Eigen::Index>(L) * L) {
        throw std::invalid_argument("expectation_nontilde: state is not on the matching doubled space");
    }
    if (std::abs(doubled_state.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("expectation_nontilde: state is not normalized");
    }
    // Row-major layout: index(n, m) = n*L + m.
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        V(doubled_state.data(), L, L);
    Matrix W = op.matrix() * V;
    return (V.conjugate().array() * W.array()).sum();
}

// Matrix exponential (scaling-and-squaring via Eigen).
inline FockOperator exp_operator(const FockOperator& op) {
    if (!op.matrix().allFinite()) {
        throw std::invalid_argument("exp_operator: operator has non-finite entries");
    }
    return FockOperator(op.space(), op.matrix().exp());
}

// exp(op) * v without forming the dense exponential: scaled Taylor series on
// a sparse view of op. Intended for sparse generators on large spaces.
inline Vector exp_apply(const FockOperator& op, const Vector& v) {
    if (!op.matrix().allFinite()) {
        throw std::invalid_argument("exp_apply: operator has non-finite entries");
    }
    if (v.size() != op.space().dim()) {
        throw std::invalid_argument("exp_apply: vector dimension does not match operator space");
    }
    Eigen::SparseMatrix<Complex> B = op.matrix().sparseView(1.0, 0.0);
    const double norm1 = op.matrix().cwiseAbs().colwise().sum().maxCoeff();
    const int s = std::max(1, static_cast<int>(std::ceil(norm1 / 2.0)));
    Vector w = v;
    for (int step = 0; step < s; ++step) {
        Vector acc = w;
        Vector term = w;
        for (int k = 1; k <= 64; ++k) {
            term = (B * term) / static_cast<double>(s) / static_cast<double>(k);
            acc += term;
            if (term.norm() <= 1e-18 * acc.norm()) break;
        }
        w = acc;
    }
    return w;
}

// ------------------------- truncation bookkeeping ---------------------------

// Truncation breaks operator identities only near the top level; assertions
// are therefore restricted to the interior subspace {|n(,m)> : n(,m) <= keep},
// keep = n_max - 1 by default.

inline double interior_max_abs(const FockOperator& op, int keep = -1) {
    const FockSpace& s = op.space();
    if (keep < 0) keep = s.n_max - 1;
    if (keep > s.n_max) throw std::out_of_range("interior_max_abs: keep exceeds n_max");
    double best = 0.0;
    if (!s.is_doubled()) {
        for (int i = 0; i <= keep; ++i)
            for (int j = 0; j <= keep; ++j)
                best = std::max(best, std::abs(op.matrix()(i, j)));
        return best;
    }
    for (int n = 0; n <= keep; ++n)
        for (int m = 0; m <= keep; ++m)
            for (int p = 0; p <= keep; ++p)
                for (int q = 0; q <= keep; ++q)
                    best = std::max(best, std::abs(op.matrix()(s.index(n, m), s.index(p, q))));
    return best;
}

inline double interior_max_abs_diff(const FockOperator& a, const FockOperator& b, int keep = -1) {
    return interior_max_abs(a - b, keep);
}

// Norm of the interior components of a doubled-space vector.
inline double interior_norm(const Vector& v, const FockSpace& space, int keep = -1) {
    if (!space.is_doubled()) {
        throw std::invalid_argument("interior_norm: expects a doubled space");
    }
    if (keep < 0) keep = space.n_max - 1;
    double acc = 0.0;
    for (int n = 0; n <= keep; ++n)
        for (int m = 0; m <= keep; ++m)
            acc += std::norm(v(space.index(n, m)));
    return std::sqrt(acc);
}

} // namespace tfd
