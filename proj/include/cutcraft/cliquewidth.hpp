#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cutcraft/graph.hpp"
#include "cutcraft/report.hpp"
#include "cutcraft/util.hpp"

namespace cutcraft {

// Expression over the four construction operations. Vertices are 0-based in
// memory, 1-based in the .cwd file format; labels start at 1 in both.
struct CwExpression {
    enum class Kind { intro, unite, join, relabel };
    struct Node {
        Kind kind;
        int a = 0, b = 0;          // intro: vertex,label; join/relabel: labels
        int child1 = -1, child2 = -1;
    };
    std::vector<Node> nodes;       // root is nodes.back()
    int root = -1;
    int width = 0;                 // largest label used
};

// S-expression syntax, whitespace-insensitive, one top-level form:
//   (intro <vertex> <label>) (union E E ...) (join <i> <j> E) (relabel <i> <j> E)
// union forms with more than two operands are binarized left-deep.
CwExpression parse_cw(const std::string& text);
CwExpression parse_cw_file(const std::string& path);
std::string emit_cw(const CwExpression& e);

// Runs the construction. Throws on reintroduced vertices, bad labels, or
// introduced ids not forming 1..n.
Graph evaluate_cw(const CwExpression& e);

// Rooted binary tree over the vertices; per node, the partition of the leaf
// set below it into twin-classes (groups with equal neighborhoods outside).
struct DecompositionTree {
    struct Node {
        int child1 = -1, child2 = -1;
        int vertex = -1;                          // leaves only
        std::vector<std::vector<int>> classes;    // sorted by smallest member
    };
    std::vector<Node> nodes;
    int root = -1;
    int width = 0;                                // max class count over nodes
    std::vector<int> postorder() const;
};

// Tree shape follows the expression's union structure; classes are computed
// from the graph directly. Checks that each node has at most as many classes
// as the expression has live labels there.
DecompositionTree build_decomposition_tree(const Graph& g, const CwExpression& e);

// Cut edges between two completely adjacent classes given side counts.
long long cross_edges(long long p_a, long long pbar_a, long long p_b,
                      long long pbar_b, bool adjacent);

// Exact solver over the decomposition tree; cmc / mmc only.
SolveReport solve_cw(const Graph& g, const DecompositionTree& t, Problem p,
                     const Budget* budget = nullptr, int width_cap = 5,
                     SolveStats* stats = nullptr);

// Handcrafted expression families used by tests and the benchmark harness.
CwExpression cw_clique(int n);
CwExpression cw_path(int n);
CwExpression cw_star(int leaves);
// Random cograph on n vertices (union/full-join recursion) plus its expression.
std::pair<CwExpression, Graph> cw_random_cograph(int n, Rng& rng);

}  // namespace cutcraft
