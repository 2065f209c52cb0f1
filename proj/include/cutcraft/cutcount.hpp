#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cutcraft/graph.hpp"
#include "cutcraft/report.hpp"
#include "cutcraft/treedec.hpp"
#include "cutcraft/util.hpp"

namespace cutcraft {

// Number of cuts (V1, V2) of vs with no edge between the halves and pinned
// on the V1 side: 2^(components(G[vs]) - 1). Enumeration-scale helper.
long long count_consistent_cuts(const Graph& g, const std::vector<int>& vs, int pinned);

struct CutCountOptions {
    int repeats = 0;                        // 0 -> max(10, ceil(log2 n))
    uint64_t seed = 1;
    const TreeDecomposition* td = nullptr;  // otherwise a heuristic one is built
    const Budget* budget = nullptr;
};

// Monte-Carlo one-sided decision: "is there a feasible cut of size >= k?"
// A yes is always backed by a real cut; a no can be wrong with probability
// at most 2^-repeats. Anchors required iff the problem is anchored.
bool decide_cutcount(const Graph& g, Problem p, long long k,
                     const CutCountOptions& opt = {}, int s = -1, int t = -1);

// Maximum cut size certified across all repetitions (with high probability
// the optimum; never an overestimate). No witness is produced; optimum is
// absent when no repetition certified anything.
SolveReport solve_cutcount(const Graph& g, Problem p, const CutCountOptions& opt = {},
                           int s = -1, int t = -1);

// ---- exact-parity introspection (test support, small n) --------------------
//
// Per-node tables of the counting DP over one fixed weight assignment,
// exactly as defined: keys assign each bag vertex a class (2 bits per sorted
// bag position; 0 = left S half, 1 = right S half, 2 = left complement half,
// 3 = right complement half; one-sided runs use class 2 for the whole
// complement side), and each cell holds the parity of partial solutions per
// (cut size l, S-side weight w), where w excludes the anchor s.
struct ExactCell {
    int stride = 0;               // bit index = l * stride + w
    std::vector<uint64_t> bits;
    bool get(int l, int w) const {
        size_t i = (size_t)l * stride + w;
        if (i >= bits.size() * 64) return false;
        return bits[i >> 6] >> (i & 63) & 1;
    }
};

struct ExactTables {
    int wcap = 0;                                  // largest meaningful w
    std::vector<std::map<uint32_t, ExactCell>> node;
};

ExactTables cc_exact_tables(const Graph& g, const NiceTreeDecomposition& nd,
                            bool two_sided, const std::vector<int>& weights);

namespace ccdetail {
// carry-less field arithmetic internals, exported for unit tests only
uint64_t gfmul_test(uint64_t a, uint64_t b);
uint64_t gfmul_soft_test(uint64_t a, uint64_t b);
uint64_t gfinv_test(uint64_t a);
}  // namespace ccdetail

}  // namespace cutcraft
