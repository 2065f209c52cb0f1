#include "cutcraft/oracle.hpp"

#include <stdexcept>

namespace cutcraft {

namespace {

// connectivity of the induced subgraph on `mask` via bitmask BFS
inline bool mask_connected(uint32_t mask, const std::vector<uint32_t>& adj) {
    if (mask == 0) return true;
    uint32_t start = mask & (~mask + 1);
    uint32_t seen = start, frontier = start;
    while (frontier) {
        uint32_t next = 0;
        uint32_t f = frontier;
        while (f) {
            int v = __builtin_ctz(f);
            f &= f - 1;
            next |= adj[v] & mask;
        }
        next &= ~seen;
        seen |= next;
        frontier = next;
    }
    return seen == mask;
}

}  // namespace

SolveReport oracle(const Graph& g, Problem p, int s, int t, int max_n, const Budget* budget) {
    if (!is_connected(g)) throw std::runtime_error("disconnected input graph");
    if (g.n > max_n)
        throw std::runtime_error("oracle refuses n=" + std::to_string(g.n) + " (cap " +
                                 std::to_string(max_n) + ")");
    if (problem_is_anchored(p)) {
        if (s < 0 || t < 0 || s >= g.n || t >= g.n || s == t)
            throw std::runtime_error("anchored problem needs distinct anchors s, t");
    }
    std::vector<uint32_t> adj(g.n, 0);
    for (auto [u, v] : g.edges) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    const uint32_t full = g.n == 32 ? ~0u : (1u << g.n) - 1;
    const bool two_sided = problem_two_sided(p);
    const bool anchored = problem_is_anchored(p);

    long long best = -1;
    uint32_t best_mask = 0;
    bool found = false;
    for (uint64_t mask64 = 0; mask64 <= full; ++mask64) {
        uint32_t mask = (uint32_t)mask64;
        if ((mask & 0xffff) == 0 && budget) budget->check("oracle");
        if (two_sided && (mask == 0 || mask == full)) continue;
        if (anchored) {
            if (!(mask >> s & 1) || (mask >> t & 1)) continue;
        }
        if (!mask_connected(mask, adj)) continue;
        if (two_sided && !mask_connected(full & ~mask, adj)) continue;
        long long sz = 0;
        for (uint32_t f = mask; f;) {
            int v = __builtin_ctz(f);
            f &= f - 1;
            sz += __builtin_popcount(adj[v] & ~mask);
        }
        if (sz > best) {
            best = sz;
            best_mask = mask;
            found = true;
        }
    }

    SolveReport r;
    r.problem = p;
    r.algorithm = "oracle";
    r.n = g.n;
    r.m = g.m();
    if (anchored) r.anchors = std::make_pair(s, t);
    if (found) {
        r.optimum = best;
        std::vector<int> wit;
        for (int v = 0; v < g.n; ++v)
            if (best_mask >> v & 1) wit.push_back(v);
        r.witness = wit;
    }
    return r;
}

}  // namespace cutcraft
