#pragma once

#include "cutcraft/graph.hpp"
#include "cutcraft/report.hpp"
#include "cutcraft/util.hpp"

namespace cutcraft {

// Exhaustive 2^n sweep; ground truth for everything else. Ties between cuts
// of equal size go to the subset first encountered in increasing bitmask
// order. mmc enumerates only non-empty proper subsets; cmc scores every
// S with G[S] connected, including S = {} and S = V at cut size 0.
// Refuses n above the cap (default 22).
SolveReport oracle(const Graph& g, Problem p, int s = -1, int t = -1, int max_n = 22,
                   const Budget* budget = nullptr);

}  // namespace cutcraft
