#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cutcraft {

// Simple undirected graph. Vertices are 0-based internally; all file formats
// and human-facing output are 1-based. No self-loops, no parallel edges.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;       // each (u,v) with u < v, sorted
    std::vector<std::vector<int>> adj;            // sorted neighbor lists

    Graph() = default;
    explicit Graph(int n_) : n(n_), adj(n_) {}

    int m() const { return (int)edges.size(); }

    void add_edge(int u, int v);                  // throws on self-loop/out of range
    bool has_edge(int u, int v) const;
    void finalize();                              // sort edge list + adjacency

    static Graph from_edges(int n, std::vector<std::pair<int, int>> es);
};

struct ParsedGraph {
    Graph graph;
    std::vector<std::string> warnings;            // e.g. duplicate edge lines
};

// PACE-style .gr: comments 'c ...', header 'p tw <n> <m>', edge lines '<u> <v>'
// (1-based). Duplicate edges are deduplicated with a warning; self-loops and
// out-of-range endpoints are errors (std::runtime_error).
ParsedGraph parse_graph(const std::string& text);
ParsedGraph parse_graph_file(const std::string& path);

// Canonical emission: header, then edges sorted by (min,max), LF endings.
std::string emit_graph(const Graph& g);

// ---- subsets -------------------------------------------------------------

// Cut predicates take an S-side membership table (size n).
std::vector<char> make_side(const Graph& g, const std::vector<int>& s);

int cut_size(const Graph& g, const std::vector<char>& side);
int cut_size(const Graph& g, const std::vector<int>& s);

// Is G[S] connected? The empty set counts as connected.
bool is_connected_subset(const Graph& g, const std::vector<char>& side);
bool is_connected_subset(const Graph& g, const std::vector<int>& s);

bool is_connected(const Graph& g);

struct Rng;

// G(n,p) conditioned on connectivity: rejection sampling first, then a random
// spanning tree plus independent extra edges once the density is clearly too
// low for rejection to land. Deterministic for a given rng state.
Graph random_connected(int n, double p, Rng& rng);

// Minimal cut == both G[S] and G[V\S] connected (S, V\S both non-empty).
// Requires a connected input graph; throws otherwise.
bool is_minimal_cut(const Graph& g, const std::vector<int>& s);

// ---- problems ------------------------------------------------------------

enum class Problem { cmc, mmc, cmc_st, mmc_st };

const char* problem_name(Problem p);
std::optional<Problem> problem_from_name(const std::string& s);

bool problem_is_anchored(Problem p);
bool problem_two_sided(Problem p);                // mmc / mmc-st

// Feasibility of S for a problem instance (anchors only used by -st tags).
bool feasible_cut(const Graph& g, Problem p, const std::vector<char>& side,
                  int s = -1, int t = -1);

}  // namespace cutcraft
