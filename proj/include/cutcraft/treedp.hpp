#pragma once

#include <optional>

#include "cutcraft/graph.hpp"
#include "cutcraft/partition.hpp"
#include "cutcraft/report.hpp"
#include "cutcraft/treedec.hpp"
#include "cutcraft/util.hpp"

namespace cutcraft {

// Maximum-cut-size DP over an anchored nice tree decomposition. Table rows
// are (bag S-side mask, connectivity partition of the S side[, same for the
// complement side when two_sided]) with the best achievable cut size; absent
// rows mean infeasible. Witnesses come from back-pointers, ties resolved
// toward the first maximizing predecessor in sorted row order.
//
// With `rank` set, each node's table is pruned to a max-weight representative
// row set per bag split (two-stage when two_sided: first over the S-side
// partitions, then over the complement's), which caps rows per split at
// 2^(side-1) without changing the root value.
struct AnchoredOutcome {
    std::optional<long long> value;
    std::vector<int> witness;      // S side, 0-based, meaningful when value set
    long long cells = 0;           // stored rows across all node tables
};

AnchoredOutcome treedp_anchored(const Graph& g, const NiceTreeDecomposition& nd,
                                bool two_sided, bool rank, const Budget* budget = nullptr);

// Anchored solves on a supplied decomposition (re-niced per anchor pair).
AnchoredOutcome treedp_st(const Graph& g, const TreeDecomposition& td, int s, int t,
                          bool two_sided, bool rank, const Budget* budget = nullptr);

// Full solves. The unanchored optimum equals a sweep of anchored solves; a
// fixed pivot vertex cuts that sweep to O(n) runs: any optimal cut either
// misses the pivot (anchor it as t) or contains it (anchor it as s; for the
// two-sided problem the flipped cut misses it, so one family suffices).
SolveReport solve_treedp(const Graph& g, const TreeDecomposition& td, Problem p, bool rank,
                         int s = -1, int t = -1, const Budget* budget = nullptr,
                         SolveStats* stats = nullptr,
                         std::optional<long long> stop_at = std::nullopt);

}  // namespace cutcraft
