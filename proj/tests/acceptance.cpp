// Acceptance suite: every criterion from the build contract, run at its
// stated tolerance, one pass/fail line each. Exit code = number of failures.

#include "tfd/bogoliubov.hpp"
#include "tfd/coalgebra.hpp"
#include "tfd/fibonacci.hpp"
#include "tfd/fock.hpp"
#include "tfd/qubit.hpp"
#include "tfd/table.hpp"
#include "tfd/thermal.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace tfd;

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d %-28s %s (%.2fs)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!ok) ++failures;
}

BigInt fibonacci_reference(int k) {
    BigInt a = 0, b = 1;
    for (int i = 0; i < k; ++i) {
        BigInt next = a + b;
        a = b;
        b = next;
    }
    return a;
}

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    // 1. Bose distribution from free-energy minimization on a 10x10 grid.
    criterion(1, "bose-distribution", [](std::string& detail) {
        const auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                const double beta = 0.2 + (5.0 - 0.2) * i / 9.0;
                const double e = 0.2 + (5.0 - 0.2) * j / 9.0;
                const double theta = minimize_mode_theta(e, beta);
                const double n = std::sinh(theta) * std::sinh(theta);
                worst = std::max(worst, std::abs(n - bose_distribution(e, beta)));
            }
        }
        const double secs = elapsed_since(t0);
        detail = "max |sinh^2 - bose| = " + format_double(worst);
        return worst < 1e-10 && secs < 1.0;
    });

    // 2. TFD-Gibbs equivalence for N, N^2, a+adag at n_max = 60.
    criterion(2, "tfd-gibbs-equivalence", [](std::string& detail) {
        const auto t0 = std::chrono::steady_clock::now();
        const int n_max = 60;
        auto s = FockSpace::single(n_max);
        auto n_op = number_operator(s);
        auto x_op = make_annihilator(s) + make_creator(s);
        double worst = 0.0;
        for (double beta : {0.5, 1.0, 2.0}) {
            GibbsEnsemble ens(1.0 * n_op, beta);
            auto vac = minimize_free_energy({1.0}, beta, n_max);
            const Vector state = vac.state_vector(0);
            for (const FockOperator* obs : {&n_op, &x_op}) {
                const double g = gibbs_average(ens, *obs);
                const double v = expectation_nontilde(state, *obs).real();
                worst = std::max(worst, std::abs(g - v));
            }
            auto n2 = n_op * n_op;
            worst = std::max(worst, std::abs(gibbs_average(ens, n2) -
                                             expectation_nontilde(state, n2).real()));
        }
        const double secs = elapsed_since(t0);
        detail = "max |gibbs - vacuum| = " + format_double(worst);
        return worst < 1e-8 && secs < 5.0;
    });

    // 3. CCR preservation for 20 random theta at n_max = 30.
    criterion(3, "ccr-preservation", [](std::string& detail) {
        std::mt19937 rng(424242);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        auto d = FockSpace::doubled(30);
        auto id = identity_operator(d);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            auto pair = bogoliubov(u(rng), d);
            worst = std::max(
                {worst,
                 interior_max_abs_diff(commutator(pair.a_theta, pair.a_theta.adjoint()), id),
                 interior_max_abs_diff(
                     commutator(pair.a_tilde_theta, pair.a_tilde_theta.adjoint()), id),
                 interior_max_abs(commutator(pair.a_theta, pair.a_tilde_theta)),
                 interior_max_abs(commutator(pair.a_theta, pair.a_tilde_theta.adjoint()))});
        }
        detail = "max interior deviation = " + format_double(worst);
        return worst < 1e-9;
    });

    // 4. Vacuum reconstruction at n_max = 40 through the generator exponential.
    criterion(4, "vacuum-reconstruction", [](std::string& detail) {
        const int n_max = 40, pad = 40;
        auto d = FockSpace::doubled(n_max + pad);
        double worst = 0.0;
        for (double theta : {0.1, 0.5, 1.0}) {
            const Vector v = generator_exp_apply(d, theta, basis_state(d, 0, 0));
            const auto amp = condensate_amplitudes(theta, n_max);
            for (int n = 0; n <= n_max; ++n) {
                for (int m = 0; m <= n_max; ++m) {
                    const double expect = (n == m) ? amp[n] : 0.0;
                    worst = std::max(worst, std::abs(v(d.index(n, m)) - expect));
                }
            }
        }
        detail = "max componentwise diff = " + format_double(worst);
        return worst < 1e-8;
    });

    // 5. Kronecker-delta trace: exact equality for 50 random hermitian matrices.
    criterion(5, "kronecker-trace", [](std::string& detail) {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        auto s = FockSpace::single(10);
        int exact = 0;
        for (int trial = 0; trial < 50; ++trial) {
            Matrix m(s.dim(), s.dim());
            for (int i = 0; i < s.dim(); ++i)
                for (int j = 0; j < s.dim(); ++j) m(i, j) = Complex(u(rng), u(rng));
            Matrix h = 0.5 * (m + m.adjoint());
            if (kronecker_trace(FockOperator(s, h)).exact_match) ++exact;
        }
        detail = std::to_string(exact) + "/50 bitwise equal";
        return exact == 50;
    });

    // 6. KMS residual for (a, adag) and (N, a+adag) at 10 time points.
    criterion(6, "kms-residual", [](std::string& detail) {
        const int n_max = 40;
        auto s = FockSpace::single(n_max);
        auto a = make_annihilator(s);
        auto n_op = number_operator(s);
        GibbsEnsemble ens(1.0 * n_op, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double t = 2.0 * i / 9.0;
            worst = std::max({worst, kms_check(ens, a, a.adjoint(), t),
                              kms_check(ens, n_op, a + a.adjoint(), t)});
        }
        detail = "max residual = " + format_double(worst);
        return worst < 1e-8;
    });

    // 7. Modular identities at theta = 0.5.
    criterion(7, "modular-identities", [](std::string& detail) {
        auto r = modular_checks(0.5, 1.0, 40);
        const double relation = std::max(r.relation_residual_a, r.relation_residual_adag);
        detail = "J^2 dev = " + format_double(r.j_squared_dev) +
                 ", relation residual = " + format_double(relation);
        return r.j_squared_dev == 0.0 && r.j_fixes_vacuum_dev < 1e-12 &&
               r.hbar_annihilates_dev < 1e-12 && r.conjugation_flip_dev == 0.0 &&
               relation < 1e-8;
    });

    // 8. Heat relation: second-order convergence on the sinusoidal path.
    criterion(8, "heat-relation-convergence", [](std::string& detail) {
        const double e = 1.0;
        auto run = [&](int npts) {
            std::vector<double> th(npts), beta(npts);
            const double dt = 2.0 * M_PI / (npts - 1);
            for (int i = 0; i < npts; ++i) {
                th[i] = 0.5 + 0.1 * std::sin(i * dt);
                beta[i] = beta_for_theta(th[i], e);
            }
            return heat_relation_residual(th, e, beta, dt);
        };
        const double coarse = run(1000);
        const double fine = run(1999);
        const double ratio = coarse / fine;
        detail = "residual ratio under halving = " + format_double(ratio);
        return ratio > 3.5 && ratio < 4.5;
    });

    // 9. Qubit: unitarity over 1000 samples, mixing frequency, entropy ln 2.
    criterion(9, "qubit-evolution", [](std::string& detail) {
        TwoLevelParams p{1.0, 2.0, M_PI / 6.0};
        double worst_u = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double t = 10.0 * i / 999.0;
            Matrix2 u = evolution_matrix(p, t);
            worst_u = std::max(worst_u,
                               (u * u.adjoint() - Matrix2::Identity()).cwiseAbs().maxCoeff());
        }

        const double h = 1e-4, t = 0.7;
        const QubitPair q0 = evolve(mix(p), p, t);
        const QubitPair qp = evolve(mix(p), p, t + h);
        const QubitPair qm = evolve(mix(p), p, t - h);
        const Vector2 dphi = (qp.phi - qm.phi) / (2.0 * h);
        const double fd = (q0.psi.dot(std::complex<double>(0.0, 1.0) * dphi)).real();
        const double w_err = std::abs(fd - mixing_frequency(p));

        TwoLevelParams pmax{1.0, 2.0, M_PI / 4.0};
        const double ent = doubled_entropy(mix(pmax).phi).system;
        const double ent_err = std::abs(ent - std::log(2.0));

        detail = "unitarity = " + format_double(worst_u) + ", d(omega) = " + format_double(w_err) +
                 ", d(ln2) = " + format_double(ent_err);
        return worst_u < 1e-12 && w_err < 1e-6 && ent_err < 1e-12;
    });

    // 10. Fibonacci: exact small totals, exact depth-40 count, golden ratio.
    criterion(10, "fibonacci-progression", [](std::string& detail) {
        auto tree = generate(4);
        const long expect[] = {1, 1, 2, 3, 5};
        bool small_ok = true;
        for (int d = 0; d <= 4; ++d) small_ok = small_ok && tree[d].total() == expect[d];

        auto counts = census_sequence(40);
        const bool deep_ok = counts[40].total() == fibonacci_reference(41);

        const double golden = 0.5 * (1.0 + std::sqrt(5.0));
        const double ratio = static_cast<double>(counts[21].total()) /
                             static_cast<double>(counts[20].total());
        const bool ratio_ok = std::abs(ratio - golden) < 1e-6;

        detail = "depth-40 total = " + counts[40].total().str();
        return small_ok && deep_ok && ratio_ok;
    });

    // 11. Coalgebra finality: exhaustive machines |M| <= 4, |C| <= 3, plus
    // agreement of the two equivalence procedures on 1000 random machines.
    criterion(11, "coalgebra-finality", [](std::string& detail) {
        const auto t0 = std::chrono::steady_clock::now();
        long machines = 0;
        bool all_ok = true;

        for (int n = 1; n <= 4 && all_ok; ++n) {
            const int nc = 3;
            ColoredMachine m;
            for (int i = 0; i < n; ++i) m.states.push_back("s" + std::to_string(i));
            for (int c = 0; c < nc; ++c) m.colors.push_back("c" + std::to_string(c));
            m.mu.assign(n, {0, 0});
            const long options = static_cast<long>(nc) * n;
            long total = 1;
            for (int i = 0; i < n; ++i) total *= options;

            for (long code = 0; code < total && all_ok; ++code) {
                long x = code;
                for (int i = 0; i < n; ++i) {
                    const long o = x % options;
                    x /= options;
                    m.mu[i] = {static_cast<int>(o % nc), static_cast<int>(o / nc)};
                }
                ++machines;

                // behaviour commutes with the destructors along prefixes
                for (int len = 1; len <= 2 * n && all_ok; ++len) {
                    for (int st = 0; st < n && all_ok; ++st) {
                        const auto b = behaviour(m, st, len);
                        const auto& [c, next] = m.mu[st];
                        all_ok = b.front() == m.colors[c] &&
                                 StreamPrefix(b.begin() + 1, b.end()) ==
                                     behaviour(m, next, len - 1);
                    }
                }

                // uniqueness among color-consistent maps into length-2 prefixes:
                // exactly one assignment g satisfies the two destructor
                // equations, and it is beh
                const int streams = nc * nc;
                long candidates = 1;
                for (int i = 0; i < n; ++i) candidates *= streams;
                int survivors = 0;
                bool beh_survives = false;
                for (long cc = 0; cc < candidates; ++cc) {
                    long y = cc;
                    bool ok = true;
                    std::vector<std::pair<int, int>> g(n);
                    for (int i = 0; i < n; ++i) {
                        const long sidx = y % streams;
                        y /= streams;
                        g[i] = {static_cast<int>(sidx % nc), static_cast<int>(sidx / nc)};
                    }
                    for (int i = 0; i < n && ok; ++i) {
                        const auto& [c, next] = m.mu[i];
                        ok = g[i].first == c && g[i].second == m.mu[next].first;
                    }
                    if (ok) {
                        ++survivors;
                        bool is_beh = true;
                        for (int i = 0; i < n && is_beh; ++i) {
                            const auto b = behaviour(m, i, 2);
                            is_beh = m.colors[g[i].first] == b[0] && m.colors[g[i].second] == b[1];
                        }
                        beh_survives = beh_survives || is_beh;
                    }
                }
                all_ok = all_ok && survivors == 1 && beh_survives;
            }
        }

        // the two equivalence procedures agree on 1000 random machines
        std::mt19937 rng(505);
        std::uniform_int_distribution<int> du(1, 8);
        bool agree = true;
        for (int trial = 0; trial < 1000 && agree; ++trial) {
            ColoredMachine m;
            const int n = du(rng);
            for (int i = 0; i < n; ++i) m.states.push_back("s" + std::to_string(i));
            m.colors = {"a", "b", "c"};
            std::uniform_int_distribution<int> pc(0, 2), pn(0, n - 1);
            for (int i = 0; i < n; ++i) m.mu.push_back({pc(rng), pn(rng)});
            try {
                for (int st = 0; st < n; ++st) observational_equivalence(m, 0, m, st);
            } catch (const std::logic_error&) {
                agree = false;
            }
        }

        const double secs = elapsed_since(t0);
        detail = std::to_string(machines) + " machines exhausted, procedures " +
                 (agree ? "agree" : "DISAGREE");
        return all_ok && agree && secs < 30.0;
    });

    // 12. Powerset functor laws for 100 random composable pairs.
    criterion(12, "powerset-functor-laws", [](std::string& detail) {
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> size(1, 6);
        int held = 0;
        long subsets = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int nx = size(rng), ny = size(rng), nz = size(rng);
            FiniteFunction f{nx, ny, {}}, g{ny, nz, {}};
            std::uniform_int_distribution<int> py(0, ny - 1), pz(0, nz - 1);
            for (int i = 0; i < nx; ++i) f.map.push_back(py(rng));
            for (int i = 0; i < ny; ++i) g.map.push_back(pz(rng));
            auto r = powerset_functor_check(f, g);
            if (r.all_hold()) ++held;
            subsets += r.subsets_checked;
        }
        detail = std::to_string(held) + "/100 pairs, " + std::to_string(subsets) + " subsets";
        return held == 100;
    });

    // 13. Foliation bridge: stream equals the independent order-parameter
    // sequence at the declared rounding; consecutive overlaps in (0,1).
    criterion(13, "foliation-bridge", [](std::string& detail) {
        const int n_max = 60, digits = 12;
        std::vector<double> grid;
        for (int i = 0; i < 8; ++i) grid.push_back(0.05 + 0.15 * i);
        auto f = foliation_as_machine(grid, 1.0, n_max, digits);
        auto stream = behaviour(f.machine, 0, static_cast<int>(grid.size()));

        bool stream_ok = true;
        for (size_t i = 0; i < grid.size(); ++i) {
            auto vac = ThermalVacuum::build({{1.0, grid[i]}}, n_max);
            const double n_indep = condensate_number(vac, 0);
            stream_ok = stream_ok && stream[i] == format_label(std::sinh(grid[i]) *
                                                               std::sinh(grid[i]), digits);
            // independent route agrees at the label precision
            stream_ok = stream_ok && format_label(n_indep, digits - 2) ==
                                         format_label(std::stod(stream[i]), digits - 2);
        }

        bool overlap_ok = true;
        double min_o = 1.0, max_o = 0.0;
        for (size_t i = 0; i + 1 < grid.size(); ++i) {
            const double o = vacuum_overlap(grid[i], grid[i + 1], n_max);
            min_o = std::min(min_o, o);
            max_o = std::max(max_o, o);
            overlap_ok = overlap_ok && o > 0.0 && o < 1.0;
        }
        detail = "overlaps in [" + format_double(min_o) + ", " + format_double(max_o) + "]";
        return stream_ok && overlap_ok;
    });

    if (failures) std::printf("%d criteria failed\n", failures);
    return failures;
}
