#pragma once

#include <string>
#include <vector>

#include "cutcraft/graph.hpp"

namespace cutcraft {

// Plain tree decomposition: bags + tree edges between bag ids (0-based).
struct TreeDecomposition {
    int n = 0;                                   // vertices of the decomposed graph
    std::vector<std::vector<int>> bags;          // each sorted
    std::vector<std::pair<int, int>> tree_edges;

    int width() const;
};

struct TdCheck {
    bool ok = true;
    std::string message;
};

// Definition checks: every vertex in a bag, every edge inside some bag,
// per-vertex bag set induces a subtree, and the bag graph is a tree.
TdCheck validate_decomposition(const Graph& g, const TreeDecomposition& td);

// Min-fill elimination ordering; ties broken toward the smallest vertex id.
// Bags are the elimination cliques. Deterministic. Requires connected input.
TreeDecomposition heuristic_decomposition(const Graph& g);

// PACE-style .td exchange format.
TreeDecomposition parse_td(const std::string& text);
TreeDecomposition parse_td_file(const std::string& path);
std::string emit_td(const TreeDecomposition& td);

// ---- nice form -------------------------------------------------------------

enum class NiceKind { Leaf, IntroduceVertex, IntroduceEdge, Forget, Join };

struct NiceNode {
    NiceKind kind;
    int v = -1, u = -1;          // IntroduceVertex/Forget: v; IntroduceEdge: {u,v}
    std::vector<int> bag;        // sorted
    int child1 = -1, child2 = -1;
};

// Rooted binary nice decomposition with one introduce-edge node per graph
// edge. With anchors (s,t): both sit in every bag, are never introduced or
// forgotten, and leaf/root bags equal {s,t}; without anchors those bags are
// empty.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;
    int s = -1, t = -1;          // anchors or -1

    int width() const;
    std::vector<int> postorder() const;          // children before parents
};

NiceTreeDecomposition to_nice(const Graph& g, const TreeDecomposition& td, int s = -1,
                              int t = -1);

// Structural self-check used by tests: node kinds consistent with bag deltas,
// each edge introduced exactly once at a node whose bag holds both endpoints,
// each non-anchor vertex forgotten exactly once.
TdCheck validate_nice(const Graph& g, const NiceTreeDecomposition& nd);

}  // namespace cutcraft
