// machine_io.hpp — Text format for machines and transition systems: one line
// per transition, three tab-separated fields, UTF-8, LF line endings.
//   LTS:             "state<TAB>label<TAB>state"
//   colored machine: "state<TAB>color<TAB>next"

#pragma once

#include "tfd/coalgebra.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfd {

struct MachineParseError : std::runtime_error {
    int line;
    MachineParseError(int line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

namespace detail {

struct RawLine {
    int line_no;
    std::string a, b, c;
};

inline std::vector<RawLine> read_triples(std::istream& in) {
    std::vector<RawLine> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto t1 = line.find('\t');
        if (t1 == std::string::npos) throw MachineParseError(line_no, "expected three tab-separated fields");
        const auto t2 = line.find('\t', t1 + 1);
        if (t2 == std::string::npos) throw MachineParseError(line_no, "expected three tab-separated fields");
        if (line.find('\t', t2 + 1) != std::string::npos) {
            throw MachineParseError(line_no, "too many fields");
        }
        RawLine r{line_no, line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1)};
        if (r.a.empty() || r.b.empty() || r.c.empty()) {
            throw MachineParseError(line_no, "empty field");
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline int intern(std::vector<std::string>& pool, const std::string& name) {
    for (size_t i = 0; i < pool.size(); ++i) {
        if (pool[i] == name) return static_cast<int>(i);
    }
    pool.push_back(name);
    return static_cast<int>(pool.size() - 1);
}

} // namespace detail

inline LTS parse_lts(std::istream& in) {
    LTS lts;
    for (const auto& r : detail::read_triples(in)) {
        const int from = detail::intern(lts.states, r.a);
        const int label = detail::intern(lts.labels, r.b);
        const int to = detail::intern(lts.states, r.c);
        lts.transitions.push_back({from, label, to});
    }
    lts.validate();
    return lts;
}

// A colored-machine file must define mu exactly once per state, and every
// state mentioned as a successor needs its own line (mu is total).
inline ColoredMachine parse_colored_machine(std::istream& in) {
    ColoredMachine m;
    std::vector<int> defined_at;  // line number per state, 0 = undefined
    auto touch_state = [&](const std::string& name) {
        const int idx = detail::intern(m.states, name);
        if (static_cast<int>(defined_at.size()) <= idx) defined_at.resize(idx + 1, 0);
        return idx;
    };

    std::vector<std::tuple<int, int, int, int>> rows;  // line, state, color, next
    for (const auto& r : detail::read_triples(in)) {
        const int s = touch_state(r.a);
        const int c = detail::intern(m.colors, r.b);
        const int nx = touch_state(r.c);
        if (defined_at[s] != 0) {
            throw MachineParseError(r.line_no, "state \"" + r.a + "\" already defined at line " +
                                                   std::to_string(defined_at[s]));
        }
        defined_at[s] = r.line_no;
        rows.emplace_back(r.line_no, s, c, nx);
    }
    if (m.states.empty()) throw MachineParseError(0, "empty machine");
    for (size_t i = 0; i < m.states.size(); ++i) {
        if (defined_at[i] == 0) {
            throw std::invalid_argument("machine is not total: state \"" + m.states[i] +
                                        "\" has no transition line");
        }
    }
    m.mu.resize(m.states.size());
    for (const auto& [line, s, c, nx] : rows) m.mu[s] = {c, nx};
    m.validate();
    return m;
}

inline void serialize(const LTS& lts, std::ostream& out) {
    lts.validate();
    for (const auto& t : lts.transitions) {
        out << lts.states[t.from] << '\t' << lts.labels[t.label] << '\t' << lts.states[t.to] << '\n';
    }
}

inline void serialize(const ColoredMachine& m, std::ostream& out) {
    m.validate();
    for (int s = 0; s < m.size(); ++s) {
        out << m.states[s] << '\t' << m.colors[m.mu[s].first] << '\t' << m.states[m.mu[s].second]
            << '\n';
    }
}

inline std::string to_text(const ColoredMachine& m) {
    std::ostringstream os;
    serialize(m, os);
    return os.str();
}

inline std::string to_text(const LTS& lts) {
    std::ostringstream os;
    serialize(lts, os);
    return os.str();
}

} // namespace tfd
