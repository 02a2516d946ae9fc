// thermal.hpp — The theta-labelled vacuum |0(theta)> and everything computed
// on it: condensate weights, order parameter, entropy, free energy and its
// minimizer (Bose distribution), Gibbs averages, KMS condition, the
// Kronecker-delta trace trick, modular conjugation, and the heat relation.

#pragma once

#include "tfd/bogoliubov.hpp"
#include "tfd/fock.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tfd {

// ------------------------------ weights --------------------------------------

// Single-mode condensate weights W_n = sinh^{2n} / cosh^{2(n+1)}; they sum to
// 1 - tail with tail = tanh^{2(n_max+1)}.
inline std::vector<double> condensate_weights(double theta, int n_max) {
    const double t2 = std::tanh(theta) * std::tanh(theta);
    const double c2 = std::cosh(theta) * std::cosh(theta);
    std::vector<double> w(n_max + 1);
    double cur = 1.0 / c2;
    for (int n = 0; n <= n_max; ++n) {
        w[n] = cur;
        cur *= t2;
    }
    return w;
}

inline double condensate_tail(double theta, int n_max) {
    return std::pow(std::tanh(theta) * std::tanh(theta), n_max + 1);
}

// Signed amplitudes tanh^n / cosh of the condensate expansion; the sign
// matters for theta < 0.
inline std::vector<double> condensate_amplitudes(double theta, int n_max) {
    std::vector<double> a(n_max + 1);
    const double t = std::tanh(theta);
    double cur = 1.0 / std::cosh(theta);
    for (int n = 0; n <= n_max; ++n) {
        a[n] = cur;
        cur *= t;
    }
    return a;
}

// Smallest n_max whose tail bound meets the tolerance.
inline int suggested_n_max(double theta, double tail_tol) {
    if (theta == 0.0) return 1;
    const double l = std::log(std::tanh(std::abs(theta)) * std::tanh(std::abs(theta)));
    return std::max(1, static_cast<int>(std::ceil(std::log(tail_tol) / l)) );
}

// ------------------------------ ThermalVacuum --------------------------------

struct ModeSpec {
    double energy;  // E_k > 0, natural units
    double theta;   // Bogoliubov angle of the mode
};

// Multi-mode vacuum as a strict tensor product over modes; stored per mode as
// the truncated weight list.
class ThermalVacuum {
public:
    static ThermalVacuum build(std::vector<ModeSpec> modes, int n_max, double tail_tol = 1e-10) {
        if (modes.empty()) throw std::invalid_argument("ThermalVacuum: no modes");
        if (n_max < 1) throw std::invalid_argument("ThermalVacuum: n_max must be >= 1");
        for (const auto& m : modes) {
            if (!(m.energy > 0.0)) throw std::invalid_argument("ThermalVacuum: mode energy must be > 0");
            if (!std::isfinite(m.theta)) throw std::invalid_argument("ThermalVacuum: theta must be finite");
            const double tail = condensate_tail(m.theta, n_max);
            if (tail >= tail_tol) {
                std::ostringstream os;
                os << "ThermalVacuum: truncation tail " << tail << " exceeds " << tail_tol
                   << " at theta=" << m.theta << "; use n_max >= " << suggested_n_max(m.theta, tail_tol);
                throw std::invalid_argument(os.str());
            }
        }
        ThermalVacuum v;
        v.modes_ = std::move(modes);
        v.n_max_ = n_max;
        for (const auto& m : v.modes_) v.weights_.push_back(condensate_weights(m.theta, n_max));
        return v;
    }

    const std::vector<ModeSpec>& modes() const { return modes_; }
    int n_max() const { return n_max_; }
    const std::vector<double>& weights(int k) const { return weights_.at(k); }

    // The mode-k state vector sum_n tanh^n/cosh |n,n~> on the doubled space.
    Vector state_vector(int k) const {
        const FockSpace d = FockSpace::doubled(n_max_);
        const auto amp = condensate_amplitudes(modes_.at(k).theta, n_max_);
        Vector v = Vector::Zero(d.dim());
        for (int n = 0; n <= n_max_; ++n) v(d.index(n, n)) = amp[n];
        return v;
    }

private:
    std::vector<ModeSpec> modes_;
    int n_max_ = 0;
    std::vector<std::vector<double>> weights_;
};

// Per-mode order parameter N_k = sinh^2(theta_k), the label of the vacuum.
struct OrderParameter {
    std::vector<double> values;
};

inline OrderParameter order_parameter(const ThermalVacuum& v) {
    OrderParameter n;
    for (const auto& m : v.modes()) n.values.push_back(std::sinh(m.theta) * std::sinh(m.theta));
    return n;
}

// <0(theta)|A+_k A_k|0(theta)> evaluated as sum_n n W_n.
inline double condensate_number(const ThermalVacuum& v, int k) {
    const auto& w = v.weights(k);
    double acc = 0.0;
    for (int n = 0; n < static_cast<int>(w.size()); ++n) acc += n * w[n];
    return acc;
}

// ------------------------------ overlaps -------------------------------------

// Single-mode overlap <0(theta')|0(theta)> = sum_n a_n(theta) a_n(theta');
// the closed form is 1/cosh(theta - theta') in the untruncated limit.
inline double vacuum_overlap(double theta, double theta_prime, int n_max) {
    if (!std::isfinite(theta) || !std::isfinite(theta_prime)) {
        throw std::invalid_argument("vacuum_overlap: angles must be finite");
    }
    const auto a = condensate_amplitudes(theta, n_max);
    const auto b = condensate_amplitudes(theta_prime, n_max);
    double acc = 0.0;
    for (int n = 0; n <= n_max; ++n) acc += a[n] * b[n];
    return acc;
}

// Product over m identical modes: the foliation separation witness.
inline double vacuum_overlap_product(double theta, double theta_prime, int n_max, int mode_count) {
    return std::pow(vacuum_overlap(theta, theta_prime, n_max), mode_count);
}

// Multi-mode overlap of two vacua with matching mode lists: strict product of
// the per-mode overlaps.
inline double vacuum_overlap(const ThermalVacuum& a, const ThermalVacuum& b) {
    if (a.modes().size() != b.modes().size()) {
        throw std::invalid_argument("vacuum_overlap: mode counts differ");
    }
    const int n_max = std::min(a.n_max(), b.n_max());
    double prod = 1.0;
    for (size_t k = 0; k < a.modes().size(); ++k) {
        prod *= vacuum_overlap(a.modes()[k].theta, b.modes()[k].theta, n_max);
    }
    return prod;
}

// ------------------------------ entropy & free energy ------------------------

// -sum_n W_n ln W_n per mode, summed over modes.
inline double entropy_expectation(const ThermalVacuum& v) {
    double acc = 0.0;
    for (size_t k = 0; k < v.modes().size(); ++k) {
        for (double w : v.weights(k)) {
            if (w > 0.0) acc -= w * std::log(w);
        }
    }
    return acc;
}

// The entropy operator S_A = -(A+A ln sinh^2 - A A+ ln cosh^2) on the doubled
// space (single mode). Undefined at theta = 0 where ln sinh^2 diverges.
inline FockOperator entropy_operator(double theta, const FockSpace& doubled) {
    if (!doubled.is_doubled()) throw std::invalid_argument("entropy_operator: expects a doubled space");
    if (theta == 0.0) throw std::domain_error("entropy_operator: undefined at theta = 0");
    const double ls = std::log(std::sinh(theta) * std::sinh(theta));
    const double lc = std::log(std::cosh(theta) * std::cosh(theta));
    auto a = make_annihilator(doubled, Mode::plain);
    return -1.0 * (ls * (a.adjoint() * a) - lc * (a * a.adjoint()));
}

// Closed-form single-mode entropy in terms of N = sinh^2(theta).
inline double entropy_closed_form(double theta) {
    const double n = std::sinh(theta) * std::sinh(theta);
    if (n == 0.0) return 0.0;
    return (1.0 + n) * std::log(1.0 + n) - n * std::log(n);
}

// F_A = sum_k E_k sinh^2(theta_k) - entropy / beta.
inline double free_energy(const ThermalVacuum& v, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("free_energy: beta must be > 0");
    double energy = 0.0;
    for (const auto& m : v.modes()) energy += m.energy * std::sinh(m.theta) * std::sinh(m.theta);
    return energy - entropy_expectation(v) / beta;
}

// Scalar free energy of one mode as a function of theta (untruncated closed
// form; used by the minimizer and its tests).
inline double free_energy_scalar(double theta, double energy, double beta) {
    return energy * std::sinh(theta) * std::sinh(theta) - entropy_closed_form(theta) / beta;
}

// d F / d theta = sinh(2 theta) (E + (2/beta) ln tanh|theta|), odd in theta.
inline double free_energy_gradient(double theta, double energy, double beta) {
    if (theta == 0.0) return 0.0;
    const double s2 = std::sinh(2.0 * theta);
    return s2 * (energy + (2.0 / beta) * std::log(std::tanh(std::abs(theta))));
}

// -------------------------- free-energy minimization -------------------------

struct MinimizeOptions {
    double gradient_tol = 1e-14;
    int max_iterations = 200;
};

// One-mode stationary angle: bisection bracket on ln tanh(theta) + beta E / 2
// (strictly increasing in theta), polished by Newton on the gradient.
inline double minimize_mode_theta(double energy, double beta, const MinimizeOptions& opt = {}) {
    if (!(beta > 0.0)) throw std::invalid_argument("minimize_mode_theta: beta must be > 0");
    if (!(energy > 0.0)) throw std::invalid_argument("minimize_mode_theta: energy must be > 0");

    const double target = -beta * energy / 2.0;  // ln tanh(theta*) = target
    auto g = [&](double th) { return std::log(std::tanh(th)) - target; };

    double lo = 1e-300, hi = 30.0;
    if (g(hi) < 0.0) return hi;  // theta* beyond any double tanh resolution
    for (int it = 0; it < 400 && hi - lo > 1e-300; ++it) {
        // bisect in log space to cover the tiny-theta regime
        const double mid = std::sqrt(lo * hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
        if (hi / lo < 1.0 + 1e-12) break;
    }
    double theta = 0.5 * (lo + hi);

    // Newton on k(theta) = ln tanh(theta) - target, k' = 2 / sinh(2 theta).
    for (int it = 0; it < opt.max_iterations; ++it) {
        const double k = std::log(std::tanh(theta)) - target;
        const double kp = 2.0 / std::sinh(2.0 * theta);
        const double step = k / kp;
        theta -= step;
        if (!(theta > 0.0)) theta = lo;  // keep to the nonnegative branch
        if (std::abs(step) <= 1e-16 * std::max(theta, 1.0)) break;
    }

    const double resid = free_energy_gradient(theta, energy, beta);
    const double scale = std::max(1.0, energy * std::sinh(2.0 * theta));
    if (std::abs(resid) > opt.gradient_tol * scale * 1e2) {
        std::ostringstream os;
        os << "minimize_mode_theta: no convergence, gradient residual " << resid;
        throw std::runtime_error(os.str());
    }
    return theta;
}

// Per-mode minimization; the result satisfies sinh^2(theta_k) = Bose(beta E_k).
inline ThermalVacuum minimize_free_energy(const std::vector<double>& energies, double beta,
                                          int n_max, double tail_tol = 1e-10,
                                          const MinimizeOptions& opt = {}) {
    std::vector<ModeSpec> modes;
    modes.reserve(energies.size());
    for (double e : energies) modes.push_back({e, minimize_mode_theta(e, beta, opt)});
    return ThermalVacuum::build(std::move(modes), n_max, tail_tol);
}

inline double bose_distribution(double energy, double beta) {
    return 1.0 / std::expm1(beta * energy);
}

// The Eq.-consistent inverse relation: beta(theta) with sinh^2 = Bose.
inline double beta_for_theta(double theta, double energy) {
    if (!(theta > 0.0)) throw std::invalid_argument("beta_for_theta: theta must be > 0");
    return -2.0 * std::log(std::tanh(theta)) / energy;
}

// ------------------------------ Gibbs state ----------------------------------

struct GibbsEnsemble {
    FockOperator hamiltonian;
    double beta;

    GibbsEnsemble(FockOperator h, double b) : hamiltonian(std::move(h)), beta(b) {
        if (!(beta > 0.0)) throw std::invalid_argument("GibbsEnsemble: beta must be > 0");
        if ((hamiltonian.matrix() - hamiltonian.matrix().adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
            throw std::invalid_argument("GibbsEnsemble: hamiltonian must be hermitian");
        }
    }
};

namespace detail {

struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
};

inline Spectrum diagonalize(const FockOperator& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("diagonalize: eigensolver failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace detail

// Tr(e^{-beta H} obs) / Tr(e^{-beta H}); errors out when the top eigenstate
// still carries weight above tail_tol.
inline double gibbs_average(const GibbsEnsemble& ens, const FockOperator& obs,
                            double tail_tol = 1e-12) {
    if (!ens.hamiltonian.same_space(obs)) {
        throw std::invalid_argument("gibbs_average: observable on a different space");
    }
    const auto spec = detail::diagonalize(ens.hamiltonian);
    const double e0 = spec.eigenvalues.minCoeff();
    Eigen::VectorXd w = (-ens.beta * (spec.eigenvalues.array() - e0)).exp();
    const double z = w.sum();
    if (w(w.size() - 1) / z >= tail_tol) {
        std::ostringstream os;
        os << "gibbs_average: top-state weight " << w(w.size() - 1) / z << " exceeds " << tail_tol
           << "; increase n_max or beta";
        throw std::invalid_argument(os.str());
    }
    Matrix obs_eig = spec.eigenvectors.adjoint() * obs.matrix() * spec.eigenvectors;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) acc += w(i) * obs_eig(i, i).real();
    return acc / z;
}

// Residual |<O P(t)> - <P(t - i beta) O>| with alpha_z(P) = e^{iHz} P e^{-iHz}
// done by diagonalizing H (exact at truncation).
inline double kms_check(const GibbsEnsemble& ens, const FockOperator& big_o,
                        const FockOperator& big_p, double t, double tail_tol = 1e-12) {
    if (!ens.hamiltonian.same_space(big_o) || !ens.hamiltonian.same_space(big_p)) {
        throw std::invalid_argument("kms_check: operators on a different space");
    }
    const auto spec = detail::diagonalize(ens.hamiltonian);
    const Eigen::VectorXd& lam = spec.eigenvalues;
    const Matrix& u = spec.eigenvectors;
    const double e0 = lam.minCoeff();

    const double span = ens.beta * (lam.maxCoeff() - e0);
    if (span > 600.0) {
        throw std::invalid_argument("kms_check: beta * spectral span too large; reduce n_max or beta");
    }

    Eigen::VectorXd w = (-ens.beta * (lam.array() - e0)).exp();
    const double z = w.sum();
    if (w(w.size() - 1) / z >= tail_tol) {
        throw std::invalid_argument("kms_check: truncation tail too large; increase n_max");
    }

    Matrix o_eig = u.adjoint() * big_o.matrix() * u;
    Matrix p_eig = u.adjoint() * big_p.matrix() * u;

    auto evolved = [&](const Matrix& p, Complex z_time) {
        Matrix out = p;
        for (Eigen::Index i = 0; i < lam.size(); ++i)
            for (Eigen::Index j = 0; j < lam.size(); ++j)
                out(i, j) *= std::exp(Complex(0.0, 1.0) * z_time * (lam(i) - lam(j)));
        return out;
    };
    auto gibbs_of = [&](const Matrix& x) {
        Complex acc = 0.0;
        for (Eigen::Index i = 0; i < lam.size(); ++i) acc += w(i) * x(i, i);
        return acc / z;
    };

    const Complex lhs = gibbs_of(o_eig * evolved(p_eig, Complex(t, 0.0)));
    const Complex rhs = gibbs_of(evolved(p_eig, Complex(t, -ens.beta)) * o_eig);
    return std::abs(lhs - rhs);
}

// ------------------------- Kronecker-delta trace trick -----------------------

struct KroneckerTraceResult {
    double doubled_basis_sum;  // sum_n <n,n~| (obs x 1) |n,n~>
    double direct_trace;       // sum_n <n| obs |n>
    bool exact_match;          // bitwise equality of the two sums
};

// The doubled basis supplies the Kronecker delta that picks out diagonal
// matrix elements; both sums run over the same finite index set.
inline KroneckerTraceResult kronecker_trace(const FockOperator& obs) {
    const FockSpace& s = obs.space();
    if (s.is_doubled()) {
        // accept obs only if it is exactly X (x) 1 for some single-mode X
        const int L = s.levels();
        Matrix block(L, L);
        for (int n = 0; n < L; ++n)
            for (int p = 0; p < L; ++p) block(n, p) = obs.matrix()(s.index(n, 0), s.index(p, 0));
        for (int n = 0; n < L; ++n)
            for (int m = 0; m < L; ++m)
                for (int p = 0; p < L; ++p)
                    for (int q = 0; q < L; ++q) {
                        const Complex e = obs.matrix()(s.index(n, m), s.index(p, q));
                        const Complex want = (m == q) ? block(n, p) : Complex(0.0);
                        if (e != want) {
                            throw std::invalid_argument("kronecker_trace: observable mixes the tilde factor");
                        }
                    }
        return kronecker_trace(FockOperator(FockSpace::single(s.n_max), block));
    }

    const FockSpace d = FockSpace::doubled(s.n_max);
    const FockOperator embedded = embed_nontilde(obs, d);
    double doubled_sum = 0.0;
    for (int n = 0; n <= s.n_max; ++n) {
        doubled_sum += embedded.matrix()(d.index(n, n), d.index(n, n)).real();
    }
    double direct = 0.0;
    for (int n = 0; n <= s.n_max; ++n) direct += obs.matrix()(n, n).real();
    return {doubled_sum, direct, doubled_sum == direct};
}

// ------------------------------ modular structure ----------------------------

// Antiunitary J: complex-conjugate the components, then swap tensor factors.
inline Vector modular_conjugate(const Vector& v, const FockSpace& space) {
    if (!space.is_doubled() || v.size() != space.dim()) {
        throw std::invalid_argument("modular_conjugate: expects a doubled-space vector");
    }
    const int L = space.levels();
    Vector out(v.size());
    for (int n = 0; n < L; ++n)
        for (int m = 0; m < L; ++m) out(space.index(n, m)) = std::conj(v(space.index(m, n)));
    return out;
}

struct ModularReport {
    double j_squared_dev;        // || J^2 v - v || over basis vectors
    double j_fixes_vacuum_dev;   // || J|0(theta)> - |0(theta)> ||
    double hbar_annihilates_dev; // || Hbar |0(theta)> ||
    double relation_residual_a;      // Eq. J e^{-beta Hbar/2} A |0> = A+ |0>
    double relation_residual_adag;   // same with A+ (right side A)
    double relation_residual_aa;     // degree-2 element A A
    double relation_residual_na;     // degree-2 element A+ A
    double conjugation_flip_dev;     // || J Hbar J + Hbar ||_max entrywise

    bool pass(double relation_tol = 1e-8, double exact_tol = 1e-12) const {
        return j_squared_dev == 0.0 && j_fixes_vacuum_dev <= exact_tol &&
               hbar_annihilates_dev <= exact_tol && conjugation_flip_dev == 0.0 &&
               relation_residual_a <= relation_tol && relation_residual_adag <= relation_tol &&
               relation_residual_aa <= relation_tol && relation_residual_na <= relation_tol;
    }
};

// Checks J^2 = 1, J|0(theta)> = |0(theta)>, Hbar|0(theta)> = 0, the defining
// modular relation for M in {A, A+} and two degree-2 elements, and
// J Hbar J = -Hbar. beta is tied to theta through the Bose relation.
inline ModularReport modular_checks(double theta, double energy, int n_max) {
    if (!(energy > 0.0)) throw std::invalid_argument("modular_checks: energy must be > 0");
    const FockSpace d = FockSpace::doubled(n_max);
    const auto amp = condensate_amplitudes(theta, n_max);
    Vector vac = Vector::Zero(d.dim());
    for (int n = 0; n <= n_max; ++n) vac(d.index(n, n)) = amp[n];

    ModularReport r{};

    // J^2 = 1 on a spanning set of basis vectors (J is antiunitary, so check
    // its action rather than a matrix square).
    double dev = 0.0;
    for (int n = 0; n <= n_max; ++n)
        for (int m = 0; m <= n_max; ++m) {
            Vector e = basis_state(d, n, m);
            dev = std::max(dev, (modular_conjugate(modular_conjugate(e, d), d) - e).norm());
        }
    // also on a complex combination
    {
        Vector v = Vector::Zero(d.dim());
        v(d.index(0, 1)) = Complex(0.6, 0.3);
        v(d.index(1, 0)) = Complex(-0.2, 0.7);
        v.normalize();
        dev = std::max(dev, (modular_conjugate(modular_conjugate(v, d), d) - v).norm());
    }
    r.j_squared_dev = dev;

    r.j_fixes_vacuum_dev = (modular_conjugate(vac, d) - vac).norm();

    // Hbar = E (N - N~) is diagonal; every condensate term has n = n~.
    auto n_plain = number_operator(d, Mode::plain);
    auto n_tilde = number_operator(d, Mode::tilde);
    FockOperator hbar = energy * (n_plain - n_tilde);
    r.hbar_annihilates_dev = (hbar.matrix() * vac).norm();

    // J Hbar J = -Hbar: for the linear map v -> J Hbar J v = S conj(Hbar) S v.
    {
        Matrix shs(d.dim(), d.dim());
        const int L = d.levels();
        for (int n = 0; n < L; ++n)
            for (int m = 0; m < L; ++m)
                for (int p = 0; p < L; ++p)
                    for (int q = 0; q < L; ++q)
                        shs(d.index(n, m), d.index(p, q)) =
                            std::conj(hbar.matrix()(d.index(m, n), d.index(q, p)));
        r.conjugation_flip_dev = (shs + hbar.matrix()).cwiseAbs().maxCoeff();
    }

    // Defining relation J e^{-beta Hbar / 2} M |0(theta)> = M+ |0(theta)>.
    const double beta = theta > 0.0 ? beta_for_theta(theta, energy) : 0.0;
    auto apply_relation = [&](const FockOperator& m_op) {
        Vector x = m_op.matrix() * vac;
        for (int n = 0; n <= n_max; ++n)
            for (int m = 0; m <= n_max; ++m)
                x(d.index(n, m)) *= std::exp(-beta * energy * (n - m) / 2.0);
        return modular_conjugate(x, d);
    };
    auto a = make_annihilator(d, Mode::plain);
    if (theta > 0.0) {
        r.relation_residual_a = (apply_relation(a) - a.adjoint().matrix() * vac).norm();
        r.relation_residual_adag = (apply_relation(a.adjoint()) - a.matrix() * vac).norm();
        r.relation_residual_aa = (apply_relation(a * a) - (a * a).adjoint().matrix() * vac).norm();
        auto na = a.adjoint() * a;
        r.relation_residual_na = (apply_relation(na) - na.adjoint().matrix() * vac).norm();
    } else {
        // theta = 0: vacuum is |0,0~>, A|0> = 0 and A+|0> pairs trivially
        r.relation_residual_a = (a.matrix() * vac).norm();
        r.relation_residual_adag = 0.0;
        r.relation_residual_aa = 0.0;
        r.relation_residual_na = 0.0;
    }
    return r;
}

// ------------------------------ heat relation --------------------------------

// Max residual of E dN/dt = (1/beta) dS/dt over interior points of a sampled
// path, by central differences. beta must be Bose-consistent with theta at
// every sample.
inline double heat_relation_residual(std::span<const double> thetas, double energy,
                                     std::span<const double> betas, double dt) {
    if (thetas.size() != betas.size()) {
        throw std::invalid_argument("heat_relation_residual: path length mismatch");
    }
    if (thetas.size() < 3) throw std::invalid_argument("heat_relation_residual: need >= 3 samples");
    if (!(dt > 0.0)) throw std::invalid_argument("heat_relation_residual: dt must be > 0");
    for (size_t i = 0; i < thetas.size(); ++i) {
        const double expect = beta_for_theta(thetas[i], energy);
        if (std::abs(betas[i] - expect) > 1e-9 * std::max(1.0, expect)) {
            throw std::invalid_argument("heat_relation_residual: beta path is not Bose-consistent");
        }
    }
    std::vector<double> n(thetas.size()), s(thetas.size());
    for (size_t i = 0; i < thetas.size(); ++i) {
        n[i] = std::sinh(thetas[i]) * std::sinh(thetas[i]);
        s[i] = entropy_closed_form(thetas[i]);
    }
    double worst = 0.0;
    for (size_t i = 1; i + 1 < thetas.size(); ++i) {
        const double dn = (n[i + 1] - n[i - 1]) / (2.0 * dt);
        const double ds = (s[i + 1] - s[i - 1]) / (2.0 * dt);
        worst = std::max(worst, std::abs(energy * dn - ds / betas[i]));
    }
    return worst;
}

} // namespace tfd
