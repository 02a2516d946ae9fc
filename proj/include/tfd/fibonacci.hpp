// fibonacci.hpp — The recursive sigma+/- single-step tree whose per-step state
// counts follow the Fibonacci progression, with the 2x2 matrix semantics of
// every edge checkable against the transition rules.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace tfd {

using BigInt = boost::multiprecision::cpp_int;

enum class NodeState { zero, one };
enum class StepRule { root, sigma_plus, sigma_minus, sigma_plus_sigma_minus };

struct Node {
    NodeState state;
    int depth = 0;
    int parent = -1;   // index into the owning tree's node arena, -1 for the root
    StepRule rule = StepRule::root;
};

// Single-step successors: |0> -> sigma+|0> = |1>; |1> branches into
// sigma-|1> = |0> and the persistence step sigma+sigma-|1> = |1>. The trivial
// sigma-sigma+ fluctuation in |0> is excluded (normal ordering).
inline std::vector<Node> step(const Node& node, int self_index) {
    std::vector<Node> children;
    if (node.state == NodeState::zero) {
        children.push_back({NodeState::one, node.depth + 1, self_index, StepRule::sigma_plus});
    } else {
        children.push_back({NodeState::zero, node.depth + 1, self_index, StepRule::sigma_minus});
        children.push_back({NodeState::one, node.depth + 1, self_index,
                            StepRule::sigma_plus_sigma_minus});
    }
    return children;
}

struct GenerationCensus {
    int depth = 0;
    BigInt zeros = 0;  // p
    BigInt ones = 0;   // q

    BigInt total() const { return zeros + ones; }
};

// Counts-only step: (p, q) -> (q, p + q).
inline GenerationCensus census_recurrence(const GenerationCensus& c) {
    return {c.depth + 1, c.ones, c.zeros + c.ones};
}

// Census sequence from the root |0> without materializing the tree.
inline std::vector<GenerationCensus> census_sequence(int max_depth) {
    if (max_depth < 0) throw std::invalid_argument("census_sequence: negative depth");
    std::vector<GenerationCensus> out;
    out.push_back({0, 1, 0});
    for (int d = 0; d < max_depth; ++d) out.push_back(census_recurrence(out.back()));
    return out;
}

inline constexpr int kTreeDepthCap = 40;

// Explicit tree in breadth-first arena form.
struct Tree {
    std::vector<Node> nodes;
    std::vector<std::vector<int>> levels;  // node indices per depth

    static Tree grow(int max_depth) {
        if (max_depth < 0) throw std::invalid_argument("Tree::grow: negative depth");
        if (max_depth > kTreeDepthCap) {
            throw std::invalid_argument(
                "Tree::grow: depth exceeds the full-tree cap; use the counts-only mode");
        }
        Tree t;
        t.nodes.push_back({NodeState::zero, 0, -1, StepRule::root});
        t.levels.push_back({0});
        for (int d = 0; d < max_depth; ++d) {
            std::vector<int> next;
            for (int idx : t.levels[d]) {
                for (Node child : step(t.nodes[idx], idx)) {
                    next.push_back(static_cast<int>(t.nodes.size()));
                    t.nodes.push_back(child);
                }
            }
            t.levels.push_back(std::move(next));
        }
        return t;
    }

    GenerationCensus census(int depth) const {
        GenerationCensus c;
        c.depth = depth;
        for (int idx : levels.at(depth)) {
            (nodes[idx].state == NodeState::zero ? c.zeros : c.ones) += 1;
        }
        return c;
    }
};

// Full-tree censuses per depth (tree mode; capped). Expands every node via
// step() but keeps only the current level, so memory stays proportional to
// the widest generation rather than the whole tree.
inline std::vector<GenerationCensus> generate(int max_depth) {
    if (max_depth < 0) throw std::invalid_argument("generate: negative depth");
    if (max_depth > kTreeDepthCap) {
        throw std::invalid_argument(
            "generate: depth exceeds the full-tree cap; use the counts-only mode");
    }
    std::vector<GenerationCensus> out;
    std::vector<NodeState> level{NodeState::zero};
    for (int d = 0; ; ++d) {
        GenerationCensus c;
        c.depth = d;
        for (NodeState s : level) (s == NodeState::zero ? c.zeros : c.ones) += 1;
        out.push_back(c);
        if (d == max_depth) break;
        std::vector<NodeState> next;
        next.reserve(level.size() * 2);
        for (size_t i = 0; i < level.size(); ++i) {
            Node n{level[i], d, -1, StepRule::root};
            for (const Node& child : step(n, static_cast<int>(i))) {
                next.push_back(child.state);
            }
        }
        level = std::move(next);
    }
    return out;
}

// ------------------------- matrix semantics ----------------------------------

// 2x2 representation in the column convention |1> = (1,0)^T, |0> = (0,1)^T,
// with sigma+- = sigma1 +- i sigma2 built from the 1/2-prefactor sigma
// matrices. The products come out as the unit raising and lowering matrices,
// so persistence steps carry scalar exactly 1.
namespace sigma {

inline Eigen::Matrix2cd plus() {
    Eigen::Matrix2cd m;
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
}
inline Eigen::Matrix2cd minus() {
    Eigen::Matrix2cd m;
    m << 0.0, 0.0, 1.0, 0.0;
    return m;
}
inline Eigen::Vector2cd ket(NodeState s) {
    Eigen::Vector2cd v;
    if (s == NodeState::one) {
        v << 1.0, 0.0;
    } else {
        v << 0.0, 1.0;
    }
    return v;
}

} // namespace sigma

// Re-derive a child state by explicit matrix application of the rule to the
// parent's basis vector; proportionality defines agreement, and the zero
// vector matches no state.
inline bool verify_matrix_semantics(NodeState parent, StepRule rule, NodeState child) {
    Eigen::Matrix2cd op;
    switch (rule) {
        case StepRule::sigma_plus: op = sigma::plus(); break;
        case StepRule::sigma_minus: op = sigma::minus(); break;
        case StepRule::sigma_plus_sigma_minus: op = sigma::plus() * sigma::minus(); break;
        case StepRule::root:
            throw std::invalid_argument("verify_matrix_semantics: root has no applied rule");
    }
    const Eigen::Vector2cd v = op * sigma::ket(parent);
    if (v.norm() == 0.0) return false;
    const Eigen::Vector2cd target = sigma::ket(child);
    // proportional to the target basis vector?
    return std::abs(std::abs(v.dot(target)) - v.norm()) < 1e-14;
}

inline bool verify_matrix_semantics(const Tree& tree, int node_index) {
    const Node& n = tree.nodes.at(node_index);
    if (n.rule == StepRule::root) {
        throw std::invalid_argument("verify_matrix_semantics: root has no applied rule");
    }
    return verify_matrix_semantics(tree.nodes.at(n.parent).state, n.rule, n.state);
}

} // namespace tfd
