// tfd — command-line harness: every experiment as a subcommand with
// machine-readable output (csv or json).
//
// Exit codes: 0 success, 1 numeric failure (tolerance/convergence),
// 2 usage/validation.

#include <CLI11.hpp>

#include "tfd/bogoliubov.hpp"
#include "tfd/coalgebra.hpp"
#include "tfd/config.hpp"
#include "tfd/fibonacci.hpp"
#include "tfd/fock.hpp"
#include "tfd/machine_io.hpp"
#include "tfd/qubit.hpp"
#include "tfd/table.hpp"
#include "tfd/thermal.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <thread>

namespace {

using namespace tfd;

void emit(const Table& t, const RunConfig& cfg) {
    std::cout << (cfg.format == "json" ? to_json(t) : to_csv(t));
}

// Fill n result slots, optionally across threads; slot order is canonical
// regardless of scheduling.
void parallel_rows(int n, bool parallel, const std::function<void(int)>& fill) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (!parallel || hw == 1 || n < 2) {
        for (int i = 0; i < n; ++i) fill(i);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned workers = std::min<unsigned>(hw, n);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers)) fill(i);
        });
    }
    for (auto& th : pool) th.join();
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

// ------------------------------ subcommands -----------------------------------

int cmd_bose(const RunConfig& cfg, double beta, const std::vector<double>& energies) {
    Table t;
    t.name = "bose";
    t.columns = {"E", "theta_min", "N_bose_closed_form", "N_from_minimizer", "abs_diff"};
    std::vector<std::vector<Table::Cell>> rows(energies.size());
    parallel_rows(static_cast<int>(energies.size()), cfg.parallel, [&](int i) {
        const double e = energies[i];
        const double theta = minimize_mode_theta(e, beta);
        const double n_min = std::sinh(theta) * std::sinh(theta);
        const double n_closed = bose_distribution(e, beta);
        rows[i] = {e, theta, n_closed, n_min, std::abs(n_closed - n_min)};
    });
    for (auto& r : rows) t.add_row(std::move(r));
    emit(t, cfg);
    return 0;
}

int cmd_gibbs_vs_tfd(const RunConfig& cfg, double beta, double energy) {
    const int n_max = cfg.n_max;
    auto s = FockSpace::single(n_max);
    auto n_op = number_operator(s);
    GibbsEnsemble ens(energy * n_op, beta);

    auto vac = minimize_free_energy({energy}, beta, n_max, cfg.tol("tail"));
    const Vector state = vac.state_vector(0);

    Table t;
    t.name = "gibbs_vs_tfd";
    t.columns = {"observable", "gibbs_average", "vacuum_expectation", "abs_diff"};
    auto push = [&](const std::string& name, const FockOperator& obs) {
        const double g = gibbs_average(ens, obs, cfg.tol("gibbs-tail"));
        const double v = expectation_nontilde(state, obs).real();
        t.add_row({name, g, v, std::abs(g - v)});
    };
    push("N", n_op);
    push("N^2", n_op * n_op);
    push("a+adag", make_annihilator(s) + make_creator(s));
    emit(t, cfg);
    return 0;
}

int cmd_kms(const RunConfig& cfg, double beta, double energy, int points, double t_max) {
    auto s = FockSpace::single(cfg.n_max);
    auto a = make_annihilator(s);
    auto n_op = number_operator(s);
    GibbsEnsemble ens(energy * n_op, beta);

    Table t;
    t.name = "kms";
    t.columns = {"pair", "t", "residual", "pass"};
    bool all_pass = true;
    const double tol = cfg.tol("kms");
    for (int i = 0; i < points; ++i) {
        const double time = points == 1 ? 0.0 : t_max * i / (points - 1);
        const double r1 = kms_check(ens, a, a.adjoint(), time, cfg.tol("gibbs-tail"));
        const double r2 = kms_check(ens, n_op, a + a.adjoint(), time, cfg.tol("gibbs-tail"));
        t.add_row({std::string("a:adag"), time, r1, r1 < tol});
        t.add_row({std::string("N:a+adag"), time, r2, r2 < tol});
        all_pass = all_pass && r1 < tol && r2 < tol;
    }
    emit(t, cfg);
    return all_pass ? 0 : 1;
}

int cmd_qubit(const RunConfig& cfg, double omega1, double omega2, double theta,
              double t_max, int steps) {
    TwoLevelParams p{omega1, omega2, theta};
    p.validate();
    const QubitPair q0 = mix(p);

    Table t;
    t.name = "qubit";
    t.columns = {"t",
                 "re_phi_0", "im_phi_0", "re_phi_1", "im_phi_1",
                 "re_psi_0", "im_psi_0", "re_psi_1", "im_psi_1",
                 "unitarity_residual", "entropy_system", "entropy_tilde"};
    std::vector<std::vector<Table::Cell>> rows(steps);
    bool unitary_ok = true;
    parallel_rows(steps, cfg.parallel, [&](int i) {
        const double time = t_max * i / (steps - 1);
        const QubitPair q = evolve(q0, p, time);
        const Matrix2 u = evolution_matrix(p, time);
        const double resid = (u * u.adjoint() - Matrix2::Identity()).cwiseAbs().maxCoeff();
        const DoubledEntropy e = doubled_entropy(q.phi);
        rows[i] = {time,
                   q.phi(0).real(), q.phi(0).imag(), q.phi(1).real(), q.phi(1).imag(),
                   q.psi(0).real(), q.psi(0).imag(), q.psi(1).real(), q.psi(1).imag(),
                   resid, e.system, e.tilde};
        if (resid >= cfg.tol("unitarity")) unitary_ok = false;
    });
    Table out = t;
    for (auto& r : rows) out.add_row(std::move(r));
    emit(out, cfg);
    return unitary_ok ? 0 : 1;
}

int cmd_fibonacci(const RunConfig& cfg, int depth, const std::string& mode) {
    std::vector<GenerationCensus> gens;
    if (mode == "tree") {
        gens = generate(depth);  // throws past the cap with a counts-mode hint
    } else {
        gens = census_sequence(depth);
    }
    Table t;
    t.name = "fibonacci";
    t.columns = {"depth", "zeros", "ones", "total", "fibonacci_reference", "match"};
    bool all_match = true;
    for (const auto& g : gens) {
        const BigInt ref = fibonacci_reference(g.depth + 1);
        const bool match = g.total() == ref;
        all_match = all_match && match;
        t.add_row({static_cast<double>(g.depth), g.zeros.str(), g.ones.str(),
                   g.total().str(), ref.str(), match});
    }
    emit(t, cfg);
    return all_match ? 0 : 1;
}

int cmd_machine(const RunConfig&, const std::string& path, const std::string& start,
                int steps, const std::string& equiv_state, const std::string& path2) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("machine: cannot open \"" + path + "\"");
    const ColoredMachine m = parse_colored_machine(in);
    const int x0 = m.state_index(start);

    if (equiv_state.empty()) {
        const StreamPrefix s = behaviour(m, x0, steps);
        for (size_t i = 0; i < s.size(); ++i) {
            if (i) std::cout << ' ';
            std::cout << s[i];
        }
        std::cout << '\n';
        return 0;
    }

    ColoredMachine m2 = m;
    if (!path2.empty()) {
        std::ifstream in2(path2);
        if (!in2) throw std::invalid_argument("machine: cannot open \"" + path2 + "\"");
        m2 = parse_colored_machine(in2);
    }
    const int x1 = m2.state_index(equiv_state);
    if (observational_equivalence(m, x0, m2, x1)) {
        std::cout << "equivalent\n";
    } else {
        const auto idx = first_distinguishing_index(m, x0, m2, x1);
        std::cout << "distinguishable at index " << *idx << "\n";
    }
    return 0;
}

int cmd_foliation(const RunConfig& cfg, double theta_min, double theta_max, int points,
                  double energy, double beta) {
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) {
        grid[i] = theta_min + (theta_max - theta_min) * i / (points - 1);
    }
    for (double th : grid) {
        const double tail = condensate_tail(th, cfg.n_max);
        if (tail >= cfg.tol("tail")) {
            std::ostringstream os;
            os << "foliation: truncation tail " << tail << " at theta=" << th
               << "; use --n-max >= " << suggested_n_max(th, cfg.tol("tail"));
            throw std::invalid_argument(os.str());
        }
    }
    const FoliationMachine f = foliation_as_machine(grid, energy, cfg.n_max, cfg.label_digits);
    const StreamPrefix stream = behaviour(f.machine, 0, points);

    Table t;
    t.name = "foliation";
    t.columns = {"theta", "order_parameter", "entropy", "free_energy", "overlap_next"};
    std::vector<std::vector<Table::Cell>> rows(points);
    parallel_rows(points, cfg.parallel, [&](int i) {
        const double th = grid[i];
        const auto w = condensate_weights(th, cfg.n_max);
        double entropy = 0.0, mean_n = 0.0;
        for (int n = 0; n <= cfg.n_max; ++n) {
            if (w[n] > 0.0) entropy -= w[n] * std::log(w[n]);
            mean_n += n * w[n];
        }
        const double free_e = energy * mean_n - entropy / beta;
        const double next = (i + 1 < points) ? grid[i + 1] : th;  // stationary last step
        rows[i] = {th, stream[i], entropy, free_e, vacuum_overlap(th, next, cfg.n_max)};
    });
    for (auto& r : rows) t.add_row(std::move(r));
    emit(t, cfg);
    return 0;
}

int cmd_selfcheck(const RunConfig& cfg) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, double value) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "  (" << format_double(value) << ")\n";
        if (!ok) ++failures;
    };
    std::mt19937 rng(cfg.seed);

    {  // Bose distribution from minimization
        std::uniform_real_distribution<double> u(0.2, 5.0);
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            const double beta = u(rng), e = u(rng);
            const double theta = minimize_mode_theta(e, beta);
            worst = std::max(worst, std::abs(std::sinh(theta) * std::sinh(theta) -
                                             bose_distribution(e, beta)));
        }
        report("bose-minimizer", worst < 1e-10, worst);
    }
    {  // CCR preservation for random angles
        auto d = FockSpace::doubled(16);
        auto id = identity_operator(d);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            auto pair = bogoliubov(u(rng), d);
            worst = std::max({worst,
                              interior_max_abs_diff(commutator(pair.a_theta, pair.a_theta.adjoint()), id),
                              interior_max_abs(commutator(pair.a_theta, pair.a_tilde_theta))});
        }
        report("ccr-preservation", worst < 1e-9, worst);
    }
    {  // vacuum reconstruction through the generator exponential
        const int n_max = 30, pad = 30;
        auto d = FockSpace::doubled(n_max + pad);
        Vector v = generator_exp_apply(d, 0.5, basis_state(d, 0, 0));
        const auto amp = condensate_amplitudes(0.5, n_max);
        double worst = 0.0;
        for (int n = 0; n <= n_max; ++n) {
            worst = std::max(worst, std::abs(v(d.index(n, n)) - amp[n]));
        }
        report("vacuum-reconstruction", worst < 1e-8, worst);
    }
    {  // modular identities
        auto r = modular_checks(0.5, 1.0, cfg.n_max);
        const double worst = std::max({r.relation_residual_a, r.relation_residual_adag,
                                       r.j_fixes_vacuum_dev, r.hbar_annihilates_dev});
        report("modular-identities", r.pass(), worst);
    }
    {  // KMS residuals
        auto s = FockSpace::single(cfg.n_max);
        auto a = make_annihilator(s);
        auto n_op = number_operator(s);
        GibbsEnsemble ens(1.0 * n_op, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            worst = std::max(worst, kms_check(ens, a, a.adjoint(), 0.4 * i));
        }
        report("kms-residual", worst < cfg.tol("kms"), worst);
    }
    {  // qubit unitarity and entropy
        TwoLevelParams p{1.0, 2.0, M_PI / 4.0};
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            Matrix2 u = evolution_matrix(p, 0.07 * i);
            worst = std::max(worst, (u * u.adjoint() - Matrix2::Identity()).cwiseAbs().maxCoeff());
        }
        const double ent = doubled_entropy(mix(p).phi).system;
        report("qubit-unitarity", worst < cfg.tol("unitarity"), worst);
        report("qubit-entropy-ln2", std::abs(ent - std::log(2.0)) < 1e-12, ent);
    }
    {  // fibonacci counts
        auto gens = census_sequence(40);
        report("fibonacci-depth-40", gens[40].total() == fibonacci_reference(41),
               static_cast<double>(gens[40].total()));
    }
    {  // equivalence procedures agree
        bool ok = true;
        std::uniform_int_distribution<int> du(1, 8);
        for (int trial = 0; trial < 100 && ok; ++trial) {
            ColoredMachine m;
            const int n = du(rng);
            for (int i = 0; i < n; ++i) m.states.push_back("s" + std::to_string(i));
            m.colors = {"a", "b", "c"};
            std::uniform_int_distribution<int> pc(0, 2), pn(0, n - 1);
            for (int i = 0; i < n; ++i) m.mu.push_back({pc(rng), pn(rng)});
            try {
                observational_equivalence(m, 0, m, pn(rng));
            } catch (const std::logic_error&) {
                ok = false;
            }
        }
        report("equivalence-procedures-agree", ok, ok ? 0.0 : 1.0);
    }
    {  // powerset functor laws
        bool ok = true;
        std::uniform_int_distribution<int> size(1, 6);
        for (int trial = 0; trial < 20; ++trial) {
            const int nx = size(rng), ny = size(rng), nz = size(rng);
            FiniteFunction f{nx, ny, {}}, g{ny, nz, {}};
            std::uniform_int_distribution<int> py(0, ny - 1), pz(0, nz - 1);
            for (int i = 0; i < nx; ++i) f.map.push_back(py(rng));
            for (int i = 0; i < ny; ++i) g.map.push_back(pz(rng));
            ok = ok && powerset_functor_check(f, g).all_hold();
        }
        report("powerset-functor-laws", ok, ok ? 0.0 : 1.0);
    }
    {  // foliation bridge
        std::vector<double> grid{0.1, 0.3, 0.5, 0.7, 0.9};
        auto f = foliation_as_machine(grid, 1.0, cfg.n_max, cfg.label_digits);
        auto stream = behaviour(f.machine, 0, 5);
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            ok = ok && stream[i] ==
                           format_label(std::sinh(grid[i]) * std::sinh(grid[i]), cfg.label_digits);
        }
        report("foliation-bridge", ok, ok ? 0.0 : 1.0);
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tfd — thermal vacua on truncated Fock spaces and their machine view"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format;
    int n_max = -1;
    long long seed = -1;
    bool parallel = false;
    std::vector<std::string> tol_overrides;
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--n-max", n_max, "Fock truncation level")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for randomized sweeps")->check(CLI::NonNegativeNumber);
    app.add_flag("--parallel", parallel, "distribute independent rows across threads");
    app.add_option("--tol", tol_overrides, "tolerance override name=value (repeatable)");

    // bose
    auto* bose = app.add_subcommand("bose", "free-energy minimizer vs the Bose distribution");
    double bose_beta = 0.0;
    std::vector<double> bose_energies;
    bose->add_option("--beta", bose_beta, "inverse temperature")->required();
    bose->add_option("--energy", bose_energies, "mode energies")->required()->expected(-1);

    // gibbs-vs-tfd
    auto* gibbs = app.add_subcommand("gibbs-vs-tfd", "trace averages vs vacuum expectations");
    double gibbs_beta = 0.0, gibbs_energy = 1.0;
    gibbs->add_option("--beta", gibbs_beta, "inverse temperature")->required();
    gibbs->add_option("--energy", gibbs_energy, "mode energy")->required();

    // kms
    auto* kms = app.add_subcommand("kms", "KMS residuals for standard operator pairs");
    double kms_beta = 1.0, kms_energy = 1.0, kms_tmax = 2.0;
    int kms_points = 10;
    kms->add_option("--beta", kms_beta, "inverse temperature")->required();
    kms->add_option("--energy", kms_energy, "mode energy")->capture_default_str();
    kms->add_option("--points", kms_points, "number of time samples")->check(CLI::PositiveNumber)->capture_default_str();
    kms->add_option("--t-max", kms_tmax, "largest sampled time")->capture_default_str();

    // qubit
    auto* qubit = app.add_subcommand("qubit", "two-level evolution, unitarity, entropies");
    double q_o1 = 0.0, q_o2 = 0.0, q_theta = 0.0, q_tmax = 0.0;
    int q_steps = 0;
    qubit->add_option("--omega1", q_o1, "frequency of |0>")->required();
    qubit->add_option("--omega2", q_o2, "frequency of |1>")->required();
    qubit->add_option("--theta", q_theta, "mixing angle")->required();
    qubit->add_option("--t-max", q_tmax, "evolution horizon")->required();
    qubit->add_option("--steps", q_steps, "number of samples (>= 2)")->required()
        ->check(CLI::Range(2, 1 << 20));

    // fibonacci
    auto* fib = app.add_subcommand("fibonacci", "sigma-step tree census per depth");
    int fib_depth = 0;
    std::string fib_mode = "counts";
    fib->add_option("--depth", fib_depth, "maximum depth")->required()
        ->check(CLI::NonNegativeNumber);
    fib->add_option("--mode", fib_mode, "tree or counts")
        ->check(CLI::IsMember({"tree", "counts"}))->capture_default_str();

    // machine
    auto* mach = app.add_subcommand("machine", "behaviour stream of a machine file");
    std::string mach_file, mach_start, mach_equiv, mach_file2;
    int mach_steps = 8;
    mach->add_option("--file", mach_file, "machine file (state TAB color TAB next)")->required();
    mach->add_option("--start", mach_start, "start state")->required();
    mach->add_option("-n,--steps", mach_steps, "prefix length")->check(CLI::NonNegativeNumber)->capture_default_str();
    mach->add_option("--equiv", mach_equiv, "second start state: print equivalence verdict");
    mach->add_option("--file2", mach_file2, "optional second machine file for --equiv");

    // foliation
    auto* fol = app.add_subcommand("foliation", "order-parameter stream over a theta grid");
    double fol_min = 0.0, fol_max = 1.0, fol_energy = 1.0, fol_beta = 1.0;
    int fol_points = 0;
    fol->add_option("--theta-min", fol_min, "grid start")->required();
    fol->add_option("--theta-max", fol_max, "grid end")->required();
    fol->add_option("--points", fol_points, "grid size (>= 2)")->required()
        ->check(CLI::Range(2, 1 << 20));
    fol->add_option("--energy", fol_energy, "mode energy")->required();
    fol->add_option("--beta", fol_beta, "inverse temperature for the free-energy column")->capture_default_str();

    // selfcheck
    auto* self = app.add_subcommand("selfcheck", "run the invariant battery and report pass/fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        if (!format.empty()) cfg.format = format;
        if (n_max > 0) cfg.n_max = n_max;
        if (seed >= 0) cfg.seed = static_cast<unsigned>(seed);
        if (parallel) cfg.parallel = true;
        for (const auto& ov : tol_overrides) {
            const auto eq = ov.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("--tol expects name=value, got \"" + ov + "\"");
            }
            cfg.set_tolerance(ov.substr(0, eq), std::stod(ov.substr(eq + 1)));
        }
        cfg.validate();

        if (bose->parsed()) {
            if (!(bose_beta > 0.0)) throw std::invalid_argument("--beta must be > 0");
            for (double e : bose_energies) {
                if (!(e > 0.0)) throw std::invalid_argument("--energy values must be > 0");
            }
            return cmd_bose(cfg, bose_beta, bose_energies);
        }
        if (gibbs->parsed()) {
            if (!(gibbs_beta > 0.0)) throw std::invalid_argument("--beta must be > 0");
            if (!(gibbs_energy > 0.0)) throw std::invalid_argument("--energy must be > 0");
            return cmd_gibbs_vs_tfd(cfg, gibbs_beta, gibbs_energy);
        }
        if (kms->parsed()) {
            if (!(kms_beta > 0.0)) throw std::invalid_argument("--beta must be > 0");
            return cmd_kms(cfg, kms_beta, kms_energy, kms_points, kms_tmax);
        }
        if (qubit->parsed()) return cmd_qubit(cfg, q_o1, q_o2, q_theta, q_tmax, q_steps);
        if (fib->parsed()) return cmd_fibonacci(cfg, fib_depth, fib_mode);
        if (mach->parsed()) {
            return cmd_machine(cfg, mach_file, mach_start, mach_steps, mach_equiv, mach_file2);
        }
        if (fol->parsed()) {
            if (!(fol_energy > 0.0)) throw std::invalid_argument("--energy must be > 0");
            if (!(fol_beta > 0.0)) throw std::invalid_argument("--beta must be > 0");
            return cmd_foliation(cfg, fol_min, fol_max, fol_points, fol_energy, fol_beta);
        }
        if (self->parsed()) return cmd_selfcheck(cfg);
    } catch (const MachineParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
