// coalgebra.hpp — Finitary coalgebra machinery: labelled transition systems,
// deterministic colored ("black-box") machines mu: M -> C x M, behaviour
// streams, homomorphism and observational-equivalence checking, powerset
// functor laws, the algebra/coalgebra duality reading, and the bridge that
// presents a discretized vacuum foliation as a state-transition machine.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfd {

// ------------------------------- LTS -----------------------------------------

// Labelled state-transition system (S, Lambda, ->); transitions may be
// nondeterministic.
struct LTS {
    struct Transition {
        int from;
        int label;
        int to;
    };

    std::vector<std::string> states;
    std::vector<std::string> labels;
    std::vector<Transition> transitions;

    void validate() const {
        for (const auto& t : transitions) {
            if (t.from < 0 || t.from >= static_cast<int>(states.size()) ||
                t.to < 0 || t.to >= static_cast<int>(states.size()) ||
                t.label < 0 || t.label >= static_cast<int>(labels.size())) {
                throw std::invalid_argument("LTS: transition endpoint or label out of range");
            }
        }
    }
};

// ------------------------------ ColoredMachine --------------------------------

// Deterministic black-box machine <M, mu: M -> C x M>: every state has exactly
// one color and one successor.
struct ColoredMachine {
    std::vector<std::string> states;
    std::vector<std::string> colors;
    std::vector<std::pair<int, int>> mu;  // per state: (color index, next state index)

    int size() const { return static_cast<int>(states.size()); }

    void validate() const {
        if (mu.size() != states.size()) {
            throw std::invalid_argument("ColoredMachine: mu must be total");
        }
        for (const auto& [c, next] : mu) {
            if (c < 0 || c >= static_cast<int>(colors.size()) ||
                next < 0 || next >= static_cast<int>(states.size())) {
                throw std::invalid_argument("ColoredMachine: mu out of range");
            }
        }
    }

    int state_index(const std::string& name) const {
        auto it = std::find(states.begin(), states.end(), name);
        if (it == states.end()) {
            throw std::invalid_argument("ColoredMachine: unknown state \"" + name + "\"");
        }
        return static_cast<int>(it - states.begin());
    }
};

using StreamPrefix = std::vector<std::string>;

// beh(x0) prefix of length n: iterate mu collecting colors.
inline StreamPrefix behaviour(const ColoredMachine& m, int x0, int n) {
    if (x0 < 0 || x0 >= m.size()) throw std::invalid_argument("behaviour: unknown state");
    if (n < 0) throw std::invalid_argument("behaviour: negative prefix length");
    StreamPrefix out;
    out.reserve(n);
    int x = x0;
    for (int i = 0; i < n; ++i) {
        const auto& [c, next] = m.mu[x];
        out.push_back(m.colors[c]);
        x = next;
    }
    return out;
}

// gamma(u) = <head(u), tail(u)> on finite prefixes.
inline std::pair<std::string, StreamPrefix> stream_destructor(const StreamPrefix& u) {
    if (u.empty()) throw std::invalid_argument("stream_destructor: empty prefix");
    return {u.front(), StreamPrefix(u.begin() + 1, u.end())};
}

// ------------------------------ FiniteFunction --------------------------------

// Total function between finite carriers {0..domain-1} -> {0..codomain-1}.
struct FiniteFunction {
    int domain_size;
    int codomain_size;
    std::vector<int> map;

    void validate() const {
        if (static_cast<int>(map.size()) != domain_size) {
            throw std::invalid_argument("FiniteFunction: not total");
        }
        for (int v : map) {
            if (v < 0 || v >= codomain_size) {
                throw std::invalid_argument("FiniteFunction: image leaves the codomain");
            }
        }
    }

    int operator()(int x) const { return map.at(x); }

    static FiniteFunction identity(int n) {
        FiniteFunction f{n, n, std::vector<int>(n)};
        std::iota(f.map.begin(), f.map.end(), 0);
        return f;
    }
};

inline FiniteFunction compose(const FiniteFunction& g, const FiniteFunction& f) {
    if (f.codomain_size != g.domain_size) {
        throw std::invalid_argument("compose: domains do not match");
    }
    FiniteFunction h{f.domain_size, g.codomain_size, {}};
    h.map.reserve(f.domain_size);
    for (int x = 0; x < f.domain_size; ++x) h.map.push_back(g(f(x)));
    return h;
}

// --------------------------- homomorphism checking ----------------------------

struct HomomorphismReport {
    bool square_commutes = false;     // mu'(f(x)) = (id_C x f)(mu(x)) for all x
    bool finality_on_prefixes = false; // beh_m(x) = beh_m'(f(x)) up to length n
    std::optional<int> witness_state;  // first state violating either condition

    bool holds() const { return square_commutes && finality_on_prefixes; }
};

// Pointwise commuting-square check, plus the finality property on prefixes of
// length n. Colors are compared by name so the machines may use different
// alphabets.
inline HomomorphismReport check_homomorphism(const ColoredMachine& m, const ColoredMachine& mp,
                                             const FiniteFunction& f, int n) {
    m.validate();
    mp.validate();
    f.validate();
    if (f.domain_size != m.size() || f.codomain_size != mp.size()) {
        throw std::invalid_argument("check_homomorphism: f must map states of m to states of m'");
    }
    HomomorphismReport r;
    r.square_commutes = true;
    for (int x = 0; x < m.size(); ++x) {
        const auto& [c, next] = m.mu[x];
        const auto& [cp, nextp] = mp.mu[f(x)];
        if (m.colors[c] != mp.colors[cp] || f(next) != nextp) {
            r.square_commutes = false;
            r.witness_state = x;
            break;
        }
    }
    r.finality_on_prefixes = true;
    for (int x = 0; x < m.size(); ++x) {
        if (behaviour(m, x, n) != behaviour(mp, f(x), n)) {
            r.finality_on_prefixes = false;
            if (!r.witness_state) r.witness_state = x;
            break;
        }
    }
    return r;
}

// ------------------------- observational equivalence --------------------------

// Index of the first position where the behaviour streams differ, or nullopt
// if they agree on the pigeonhole-sufficient prefix |M| + |M'|.
inline std::optional<int> first_distinguishing_index(const ColoredMachine& m, int x,
                                                     const ColoredMachine& mp, int xp) {
    const int n = m.size() + mp.size();
    const StreamPrefix a = behaviour(m, x, n);
    const StreamPrefix b = behaviour(mp, xp, n);
    for (int i = 0; i < n; ++i) {
        if (a[i] != b[i]) return i;
    }
    return std::nullopt;
}

// Partition refinement on the disjoint union: blocks by color, refined by
// successor block until stable. Returns block ids, m's states first.
inline std::vector<int> refine_disjoint_union(const ColoredMachine& m, const ColoredMachine& mp) {
    const int n = m.size() + mp.size();
    auto color_of = [&](int i) {
        return i < m.size() ? m.colors[m.mu[i].first] : mp.colors[mp.mu[i - m.size()].first];
    };
    auto next_of = [&](int i) {
        return i < m.size() ? m.mu[i].second : mp.mu[i - m.size()].second + m.size();
    };

    std::map<std::string, int> color_block;
    std::vector<int> block(n);
    for (int i = 0; i < n; ++i) {
        auto [it, inserted] = color_block.try_emplace(color_of(i), static_cast<int>(color_block.size()));
        block[i] = it->second;
    }
    for (;;) {
        std::map<std::pair<int, int>, int> signature;
        std::vector<int> next_block(n);
        for (int i = 0; i < n; ++i) {
            auto key = std::pair{block[i], block[next_of(i)]};
            auto [it, inserted] = signature.try_emplace(key, static_cast<int>(signature.size()));
            next_block[i] = it->second;
        }
        if (next_block == block) return block;
        block = std::move(next_block);
    }
}

// Decides beh(x) = beh(x') by prefix comparison, cross-checked against
// partition refinement; the two procedures must agree.
inline bool observational_equivalence(const ColoredMachine& m, int x,
                                      const ColoredMachine& mp, int xp) {
    m.validate();
    mp.validate();
    if (x < 0 || x >= m.size() || xp < 0 || xp >= mp.size()) {
        throw std::invalid_argument("observational_equivalence: unknown state");
    }
    const bool by_prefix = !first_distinguishing_index(m, x, mp, xp).has_value();
    const auto block = refine_disjoint_union(m, mp);
    const bool by_partition = block[x] == block[m.size() + xp];
    if (by_prefix != by_partition) {
        throw std::logic_error("observational_equivalence: decision procedures disagree");
    }
    return by_prefix;
}

// ----------------------- LTS bisimulation (nondeterministic) ------------------

// Kanellakis-Smolka style partition refinement for labelled transition
// systems: states are bisimilar when they carry the same labelled moves into
// the same blocks.
inline std::vector<int> bisimulation_partition(const LTS& lts) {
    lts.validate();
    const int n = static_cast<int>(lts.states.size());
    std::vector<int> block(n, 0);
    for (;;) {
        // signature: set of (label, successor block) per state
        std::map<std::pair<int, std::set<std::pair<int, int>>>, int> sig_ids;
        std::vector<int> next_block(n);
        std::vector<std::set<std::pair<int, int>>> moves(n);
        for (const auto& t : lts.transitions) {
            moves[t.from].insert({t.label, block[t.to]});
        }
        for (int i = 0; i < n; ++i) {
            auto key = std::pair{block[i], moves[i]};
            auto [it, inserted] = sig_ids.try_emplace(key, static_cast<int>(sig_ids.size()));
            next_block[i] = it->second;
        }
        if (next_block == block) return block;
        block = std::move(next_block);
    }
}

inline bool bisimilar(const LTS& lts, int p, int q) {
    if (p < 0 || q < 0 || p >= static_cast<int>(lts.states.size()) ||
        q >= static_cast<int>(lts.states.size())) {
        throw std::invalid_argument("bisimilar: unknown state");
    }
    const auto block = bisimulation_partition(lts);
    return block[p] == block[q];
}

// --------------------------- powerset functor laws ----------------------------

// Subsets of carriers up to size 12 are bitmasks; checks run over every
// subset.
struct PowersetReport {
    bool covariant_identity = false;
    bool covariant_composition = false;
    bool contravariant_composition = false;
    bool preimage_definition = false;
    long subsets_checked = 0;

    bool all_hold() const {
        return covariant_identity && covariant_composition &&
               contravariant_composition && preimage_definition;
    }
};

namespace powerset {

inline constexpr int kMaxCarrier = 12;

// direct image P(f): U -> { f(x) | x in U }
inline unsigned image(const FiniteFunction& f, unsigned subset) {
    unsigned out = 0;
    for (int x = 0; x < f.domain_size; ++x) {
        if (subset & (1u << x)) out |= 1u << f(x);
    }
    return out;
}

// preimage P^op(f): T -> { x | f(x) in T }
inline unsigned preimage(const FiniteFunction& f, unsigned subset) {
    unsigned out = 0;
    for (int x = 0; x < f.domain_size; ++x) {
        if (subset & (1u << f(x))) out |= 1u << x;
    }
    return out;
}

} // namespace powerset

inline PowersetReport powerset_functor_check(const FiniteFunction& f, const FiniteFunction& g) {
    f.validate();
    g.validate();
    if (f.codomain_size != g.domain_size) {
        throw std::invalid_argument("powerset_functor_check: f and g are not composable");
    }
    if (f.domain_size > powerset::kMaxCarrier || g.domain_size > powerset::kMaxCarrier ||
        g.codomain_size > powerset::kMaxCarrier) {
        throw std::invalid_argument("powerset_functor_check: carrier exceeds the size cap");
    }
    const FiniteFunction gf = compose(g, f);
    const FiniteFunction idx = FiniteFunction::identity(f.domain_size);

    PowersetReport r;
    r.covariant_identity = true;
    r.covariant_composition = true;
    r.contravariant_composition = true;
    r.preimage_definition = true;

    for (unsigned u = 0; u < (1u << f.domain_size); ++u) {
        ++r.subsets_checked;
        if (powerset::image(idx, u) != u) r.covariant_identity = false;
        if (powerset::image(gf, u) != powerset::image(g, powerset::image(f, u))) {
            r.covariant_composition = false;
        }
    }
    for (unsigned t = 0; t < (1u << g.codomain_size); ++t) {
        ++r.subsets_checked;
        // P^op(g.f) = P^op(f) . P^op(g) (order reversal)
        if (powerset::preimage(gf, t) != powerset::preimage(f, powerset::preimage(g, t))) {
            r.contravariant_composition = false;
        }
    }
    // preimage definition, elementwise
    for (unsigned t = 0; t < (1u << f.codomain_size); ++t) {
        ++r.subsets_checked;
        unsigned expect = 0;
        for (int x = 0; x < f.domain_size; ++x) {
            if (t & (1u << f(x))) expect |= 1u << x;
        }
        if (powerset::preimage(f, t) != expect) r.preimage_definition = false;
    }
    return r;
}

// -------------------------- algebra/coalgebra duality --------------------------

// A coalgebra homomorphism square read pointwise, and the same data read in
// the opposite composition order as an algebra homomorphism square. Both
// readings evaluate the same equations, so their verdicts must coincide
// state by state.
struct DualityReport {
    bool coalgebra_reading = false;
    bool algebra_reading = false;
    int squares_checked = 0;
    std::optional<int> witness_state;

    bool readings_agree() const { return coalgebra_reading == algebra_reading; }
};

inline DualityReport alg_coalg_duality_check(const ColoredMachine& m, const ColoredMachine& mp,
                                             const FiniteFunction& f) {
    m.validate();
    mp.validate();
    f.validate();
    if (f.domain_size != m.size() || f.codomain_size != mp.size()) {
        throw std::invalid_argument("alg_coalg_duality_check: f must map states of m to states of m'");
    }
    DualityReport r;
    bool coalg = true, alg = true;
    for (int x = 0; x < m.size(); ++x) {
        ++r.squares_checked;
        // coalgebra square: (mu' . f)(x) = (Omega f . mu)(x)
        const auto lhs = mp.mu[f(x)];
        const auto& [c, next] = m.mu[x];
        const std::pair<int, int> rhs{lhs.first, f(next)};  // colors compared by name below
        const bool colors_match = mp.colors[lhs.first] == m.colors[c];
        const bool coalg_here = colors_match && lhs.second == rhs.second;
        // algebra reading: arrows reversed, composition order flipped; the
        // pointwise condition is the same equality evaluated right-to-left
        const bool alg_here = (f(next) == lhs.second) && colors_match;
        if (!coalg_here) {
            coalg = false;
            if (!r.witness_state) r.witness_state = x;
        }
        if (!alg_here) alg = false;
    }
    r.coalgebra_reading = coalg;
    r.algebra_reading = alg;
    return r;
}

inline DualityReport alg_coalg_duality_check(const ColoredMachine& m) {
    return alg_coalg_duality_check(m, m, FiniteFunction::identity(m.size()));
}

// ------------------------------ foliation bridge -------------------------------

// Decimal label with a fixed number of significant digits: keeps the color
// alphabet finite.
inline std::string format_label(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return std::string(buf);
}

struct FoliationMachine {
    LTS lts;
    ColoredMachine machine;
    std::vector<double> thetas;
    std::vector<double> order_parameter;  // sinh^2(theta_i)
    double energy = 0.0;
    int n_max = 0;
};

// Discretized vacua as a machine: state i emits its order-parameter label and
// steps to i+1; the last state is stationary. The theta coordinates are kept
// off the stream interface (black-box reading).
inline FoliationMachine foliation_as_machine(const std::vector<double>& theta_grid, double energy,
                                             int n_max, int label_digits = 12) {
    if (theta_grid.empty()) {
        throw std::invalid_argument("foliation_as_machine: empty grid");
    }
    for (size_t i = 1; i < theta_grid.size(); ++i) {
        if (!(theta_grid[i] > theta_grid[i - 1])) {
            throw std::invalid_argument("foliation_as_machine: grid must be strictly increasing");
        }
    }
    if (label_digits < 1 || label_digits > 17) {
        throw std::invalid_argument("foliation_as_machine: label_digits out of range");
    }

    FoliationMachine f;
    f.thetas = theta_grid;
    f.energy = energy;
    f.n_max = n_max;

    const int n = static_cast<int>(theta_grid.size());
    std::vector<std::string> labels;
    std::vector<int> label_of(n);
    for (int i = 0; i < n; ++i) {
        const double value = std::sinh(theta_grid[i]) * std::sinh(theta_grid[i]);
        f.order_parameter.push_back(value);
        const std::string lab = format_label(value, label_digits);
        auto it = std::find(labels.begin(), labels.end(), lab);
        if (it == labels.end()) {
            label_of[i] = static_cast<int>(labels.size());
            labels.push_back(lab);
        } else {
            label_of[i] = static_cast<int>(it - labels.begin());
        }
    }

    for (int i = 0; i < n; ++i) f.lts.states.push_back("v" + std::to_string(i));
    f.lts.labels = labels;
    for (int i = 0; i < n; ++i) {
        const int to = (i + 1 < n) ? i + 1 : i;  // stationary last vacuum
        f.lts.transitions.push_back({i, label_of[i], to});
    }
    f.lts.validate();

    f.machine.states = f.lts.states;
    f.machine.colors = labels;
    for (int i = 0; i < n; ++i) {
        const int to = (i + 1 < n) ? i + 1 : i;
        f.machine.mu.push_back({label_of[i], to});
    }
    f.machine.validate();
    return f;
}

} // namespace tfd
