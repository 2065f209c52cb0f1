#pragma once

#include <vector>

#include "cutcraft/graph.hpp"
#include "cutcraft/report.hpp"
#include "cutcraft/util.hpp"

namespace cutcraft {

// Removing a twin-cover leaves disjoint cliques, and all vertices of one
// clique see the same subset of the cover; that shared neighborhood is the
// clique's type. Everything the twin-cover solvers do runs on this view.
struct TwinCoverStructure {
    std::vector<int> cover;                   // X, sorted
    std::vector<std::vector<int>> cliques;    // partition of V \ X, each sorted
    std::vector<std::vector<int>> types;      // types[i] = N(cliques[i]) ∩ X
};

// Is {u,v} an edge between true twins (equal closed neighborhoods)?
bool true_twin_edge(const Graph& g, int u, int v);

// Minimum cover by iterative deepening over the non-twin edges: branch on
// either endpoint of an uncovered edge. Throws BudgetExceeded if every cover
// is larger than `max_size`.
TwinCoverStructure compute_twin_cover(const Graph& g, int max_size = 16);

// Cut edges incident to a clique of size z with p vertices in S, where the
// clique's type meets X \ X' in a vertices and X' in b vertices.
long long clique_cut_contribution(int z, int p, int a, int b);

SolveReport solve_cmc_twincover(const Graph& g, const Budget* budget = nullptr,
                                int max_cover = 16);
SolveReport solve_mmc_twincover(const Graph& g, const Budget* budget = nullptr,
                                int max_cover = 16);

}  // namespace cutcraft
