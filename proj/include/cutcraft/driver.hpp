#pragma once

#include <string>

#include "cutcraft/graph.hpp"
#include "cutcraft/report.hpp"
#include "cutcraft/treedec.hpp"
#include "cutcraft/util.hpp"

namespace cutcraft {

// Solution-size dichotomy: either a greedy leafy spanning tree certifies a
// connected cut of size >= k outright (S = the tree's internal vertices, one
// cut edge per leaf), or we hand back a decomposition for the exact solvers.
// The greedy tree grows from a max-degree root, always expanding the tree
// vertex with the most outside neighbors and attaching all of them at once.
// The fallback is the min-fill heuristic decomposition: answers stay exact,
// only the width bound of the textbook dichotomy is not certified.
struct WinWin {
    bool yes = false;
    std::vector<int> witness;        // internal vertices, set when yes
    long long cut = 0;               // its verified cut size, when yes
    TreeDecomposition fallback;      // set when !yes
};

WinWin win_win(const Graph& g, long long k);

// Decision "is there a feasible cut of size >= k?" with a verified witness on
// yes. One-sided unanchored instances try the spanning-tree certificate
// first; everything else (and the fallback) runs the rank-pruned DP with an
// early stop at k. seed is reserved for randomized routes; the current routes
// are exact and ignore it.
struct KDecision {
    bool yes = false;
    SolveReport report;
};

KDecision solve_k(const Graph& g, Problem p, long long k, uint64_t seed = 1,
                  const Budget* budget = nullptr);

// Route picker: oracle for small n, twin-cover when a small cover exists,
// plain DP for small heuristic width, rank-pruned DP for moderate width,
// Monte-Carlo counting otherwise. Anchored problems skip the twin-cover
// route (it solves the unanchored problems only).
struct AutoChoice {
    std::string algorithm;           // oracle|twincover|twdp|rank|cutcount
    TreeDecomposition td;            // built for the width probe; valid when has_td
    bool has_td = false;
};

AutoChoice auto_select(const Graph& g, Problem p);

// Run the selected (or named) algorithm. `algorithm` empty or "auto" defers
// to auto_select. The decomposition is built once and shared; repeats/seed
// only affect the counting solver.
SolveReport solve_auto(const Graph& g, Problem p, const std::string& algorithm = "auto",
                       int s = -1, int t = -1, uint64_t seed = 1, int repeats = 0,
                       const Budget* budget = nullptr, SolveStats* stats = nullptr,
                       const TreeDecomposition* td = nullptr);

}  // namespace cutcraft
