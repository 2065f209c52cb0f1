#include "cutcraft/treedp.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "cutcraft/rankreduce.hpp"

namespace cutcraft {

namespace {

struct Row {
    uint32_t smask = 0;
    Partition sp, tp;
    long long value = 0;
    int bp1 = -1, bp2 = -1;
};

using KeyT = std::array<uint64_t, 5>;

inline KeyT key_of(const Row& r) {
    auto [a, b] = r.sp.pack();
    auto [c, d] = r.tp.pack();
    return {r.smask, a, b, c, d};
}

struct KeyHash {
    size_t operator()(const KeyT& k) const {
        uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (uint64_t w : k) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
            h ^= h >> 33;
        }
        return (size_t)h;
    }
};

struct Table {
    std::vector<Row> rows;  // finalized: sorted by key
};

struct Acc {
    std::unordered_map<KeyT, int, KeyHash> index;
    std::vector<Row> rows;

    // keep max value per key; ties keep the earlier candidate
    void offer(Row&& r) {
        KeyT k = key_of(r);
        auto [it, fresh] = index.try_emplace(k, (int)rows.size());
        if (fresh)
            rows.push_back(std::move(r));
        else if (r.value > rows[it->second].value)
            rows[it->second] = std::move(r);
    }

    Table finalize() {
        std::sort(rows.begin(), rows.end(),
                  [](const Row& x, const Row& y) { return key_of(x) < key_of(y); });
        return Table{std::move(rows)};
    }
};

inline int rank_in(uint32_t mask, int pos) {
    return __builtin_popcount(mask & ((1u << pos) - 1));
}
inline uint32_t insert_bit(uint32_t mask, int pos, int bit) {
    uint32_t low = mask & ((1u << pos) - 1);
    uint32_t high = (mask >> pos) << (pos + 1);
    return high | ((uint32_t)bit << pos) | low;
}
inline uint32_t remove_bit(uint32_t mask, int pos) {
    uint32_t low = mask & ((1u << pos) - 1);
    uint32_t high = (mask >> (pos + 1)) << pos;
    return high | low;
}

int pos_in_bag(const std::vector<int>& bag, int v) {
    return (int)(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

// two-stage representative pruning of a finalized table (rows sorted by key)
void prune_rank(Table& tab, bool two_sided, const Budget* budget) {
    size_t nrows = tab.rows.size();
    if (nrows < 2) return;
    std::vector<char> keep(nrows, 1);

    auto run_groups = [&](const std::vector<int>& order, bool group_by_tp, bool reduce_sp) {
        size_t i = 0;
        while (i < order.size()) {
            size_t j = i;
            auto same_group = [&](int a, int b) {
                const Row &x = tab.rows[a], &y = tab.rows[b];
                if (x.smask != y.smask) return false;
                return group_by_tp ? x.tp == y.tp : x.sp == y.sp;
            };
            while (j < order.size() && same_group(order[i], order[j])) ++j;
            size_t sz = j - i;
            const Row& head = tab.rows[order[i]];
            int k = reduce_sp ? head.sp.k : head.tp.k;
            if (sz >= 2 && k >= 2) {
                if (budget) budget->check("representative reduce");
                std::vector<Partition> parts(sz);
                std::vector<long long> ws(sz);
                for (size_t x = 0; x < sz; ++x) {
                    const Row& r = tab.rows[order[i + x]];
                    parts[x] = reduce_sp ? r.sp : r.tp;
                    ws[x] = r.value;
                }
                std::vector<char> kept = reduce_weighted_partitions(parts, ws);
                for (size_t x = 0; x < sz; ++x)
                    if (!kept[x]) keep[order[i + x]] = 0;
            }
            i = j;
        }
    };

    std::vector<int> order;
    order.reserve(nrows);
    for (size_t i = 0; i < nrows; ++i)
        if (keep[i]) order.push_back((int)i);
    if (!two_sided) {
        // rows are key-sorted, so smask groups are already contiguous; every
        // tp is the empty partition, so tp-grouping degenerates to smask-only
        run_groups(order, true, true);
    } else {
        // stage 1: fix (smask, tp), reduce over sp
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            const Row &x = tab.rows[a], &y = tab.rows[b];
            if (x.smask != y.smask) return x.smask < y.smask;
            if (!(x.tp == y.tp)) return x.tp < y.tp;
            return x.sp < y.sp;
        });
        run_groups(order, true, true);
        // stage 2: fix (smask, sp), reduce over tp among survivors
        order.clear();
        for (size_t i = 0; i < nrows; ++i)
            if (keep[i]) order.push_back((int)i);
        run_groups(order, false, false);
    }
    std::vector<Row> pruned;
    pruned.reserve(nrows);
    for (size_t i = 0; i < nrows; ++i)
        if (keep[i]) pruned.push_back(std::move(tab.rows[i]));
    tab.rows = std::move(pruned);
}

}  // namespace

AnchoredOutcome treedp_anchored(const Graph& g, const NiceTreeDecomposition& nd,
                                bool two_sided, bool rank, const Budget* budget) {
    assert(nd.s >= 0 && nd.t >= 0);
    auto order = nd.postorder();
    std::vector<Table> tables(nd.nodes.size());
    long long cells = 0;

    for (int ni : order) {
        if (budget) budget->check("tree dp");
        const NiceNode& nd_i = nd.nodes[ni];
        if ((int)nd_i.bag.size() > kMaxPart)
            throw BudgetExceeded("bag too large for partition tables");
        Acc acc;
        switch (nd_i.kind) {
            case NiceKind::Leaf: {
                Row r;
                r.smask = 1u << pos_in_bag(nd_i.bag, nd.s);
                r.sp = one_block(1);
                r.tp = two_sided ? one_block(1) : Partition{};
                acc.offer(std::move(r));
                break;
            }
            case NiceKind::IntroduceVertex: {
                const Table& C = tables[nd_i.child1];
                int pv = pos_in_bag(nd_i.bag, nd_i.v);
                for (int ci = 0; ci < (int)C.rows.size(); ++ci) {
                    const Row& e = C.rows[ci];
                    {  // v joins the S side as its own block
                        Row r;
                        r.smask = insert_bit(e.smask, pv, 1);
                        r.sp = insert_singleton(e.sp, rank_in(r.smask, pv));
                        r.tp = e.tp;
                        r.value = e.value;
                        r.bp1 = ci;
                        acc.offer(std::move(r));
                    }
                    {  // v joins the complement side
                        Row r;
                        r.smask = insert_bit(e.smask, pv, 0);
                        r.sp = e.sp;
                        r.tp = two_sided
                                   ? insert_singleton(e.tp, pv - rank_in(r.smask, pv))
                                   : Partition{};
                        r.value = e.value;
                        r.bp1 = ci;
                        acc.offer(std::move(r));
                    }
                }
                break;
            }
            case NiceKind::Forget: {
                const Table& C = tables[nd_i.child1];
                const auto& cbag = nd.nodes[nd_i.child1].bag;
                int pv = pos_in_bag(cbag, nd_i.v);
                for (int ci = 0; ci < (int)C.rows.size(); ++ci) {
                    const Row& e = C.rows[ci];
                    Row r;
                    if (e.smask >> pv & 1) {
                        int iv = rank_in(e.smask, pv);
                        // a still-isolated block may never leave the bag
                        if (e.sp.block_size(iv) == 1) continue;
                        r.sp = erase_element(e.sp, iv);
                        r.tp = e.tp;
                    } else {
                        if (two_sided) {
                            int jv = pv - rank_in(e.smask, pv);
                            if (e.tp.block_size(jv) == 1) continue;
                            r.tp = erase_element(e.tp, jv);
                        }
                        r.sp = e.sp;
                    }
                    r.smask = remove_bit(e.smask, pv);
                    r.value = e.value;
                    r.bp1 = ci;
                    acc.offer(std::move(r));
                }
                break;
            }
            case NiceKind::IntroduceEdge: {
                const Table& C = tables[nd_i.child1];
                int pu = pos_in_bag(nd_i.bag, nd_i.u);
                int pv = pos_in_bag(nd_i.bag, nd_i.v);
                for (int ci = 0; ci < (int)C.rows.size(); ++ci) {
                    const Row& e = C.rows[ci];
                    int bu = e.smask >> pu & 1, bv = e.smask >> pv & 1;
                    Row r = e;
                    r.bp1 = ci;
                    r.bp2 = -1;
                    if (bu != bv) {
                        r.value = e.value + 1;  // the edge crosses the cut
                    } else if (bu == 1) {
                        int iu = rank_in(e.smask, pu), iv = rank_in(e.smask, pv);
                        if (!e.sp.same_block(iu, iv)) r.sp = merge_blocks(e.sp, iu, iv);
                    } else if (two_sided) {
                        int ju = pu - rank_in(e.smask, pu), jv = pv - rank_in(e.smask, pv);
                        if (!e.tp.same_block(ju, jv)) r.tp = merge_blocks(e.tp, ju, jv);
                    }
                    acc.offer(std::move(r));
                }
                break;
            }
            case NiceKind::Join: {
                const Table& A = tables[nd_i.child1];
                const Table& B = tables[nd_i.child2];
                // rows are key-sorted, so equal smask runs are contiguous
                size_t bi = 0;
                for (size_t ai = 0; ai < A.rows.size();) {
                    uint32_t sm = A.rows[ai].smask;
                    size_t ae = ai;
                    while (ae < A.rows.size() && A.rows[ae].smask == sm) ++ae;
                    while (bi < B.rows.size() && B.rows[bi].smask < sm) ++bi;
                    size_t be = bi;
                    while (be < B.rows.size() && B.rows[be].smask == sm) ++be;
                    for (size_t x = ai; x < ae; ++x) {
                        if (budget && ((x - ai) & 63) == 0) budget->check("tree dp join");
                        for (size_t y = bi; y < be; ++y) {
                            const Row &ra = A.rows[x], &rb = B.rows[y];
                            Row r;
                            r.smask = sm;
                            r.sp = join_partitions(ra.sp, rb.sp);
                            r.tp = two_sided ? join_partitions(ra.tp, rb.tp) : Partition{};
                            r.value = ra.value + rb.value;
                            r.bp1 = (int)x;
                            r.bp2 = (int)y;
                            acc.offer(std::move(r));
                        }
                    }
                    ai = ae;
                    bi = be;
                }
                break;
            }
        }
        tables[ni] = acc.finalize();
        if (rank) prune_rank(tables[ni], two_sided, budget);
        cells += (long long)tables[ni].rows.size();
        // children of a join are dead now; introduce/forget chains still
        // reference their child for back-pointers, so nothing is freed here
    }

    AnchoredOutcome out;
    out.cells = cells;
    const NiceNode& rootnd = nd.nodes[nd.root];
    Row want;
    want.smask = 1u << pos_in_bag(rootnd.bag, nd.s);
    want.sp = one_block(1);
    want.tp = two_sided ? one_block(1) : Partition{};
    KeyT wk = key_of(want);
    const Table& RT = tables[nd.root];
    int found = -1;
    for (int i = 0; i < (int)RT.rows.size(); ++i)
        if (key_of(RT.rows[i]) == wk) {
            found = i;
            break;
        }
    if (found < 0) return out;
    out.value = RT.rows[found].value;

    // back-pointer walk: vertices enter S at leaves and introduce nodes
    std::vector<std::pair<int, int>> stack{{nd.root, found}};
    std::vector<char> in_s(g.n, 0);
    while (!stack.empty()) {
        auto [ni, ri] = stack.back();
        stack.pop_back();
        const NiceNode& x = nd.nodes[ni];
        const Row& r = tables[ni].rows[ri];
        switch (x.kind) {
            case NiceKind::Leaf:
                in_s[nd.s] = 1;
                break;
            case NiceKind::IntroduceVertex:
                if (r.smask >> pos_in_bag(x.bag, x.v) & 1) in_s[x.v] = 1;
                stack.push_back({x.child1, r.bp1});
                break;
            case NiceKind::Forget:
            case NiceKind::IntroduceEdge:
                stack.push_back({x.child1, r.bp1});
                break;
            case NiceKind::Join:
                stack.push_back({x.child1, r.bp1});
                stack.push_back({x.child2, r.bp2});
                break;
        }
    }
    for (int v = 0; v < g.n; ++v)
        if (in_s[v]) out.witness.push_back(v);
    return out;
}

AnchoredOutcome treedp_st(const Graph& g, const TreeDecomposition& td, int s, int t,
                          bool two_sided, bool rank, const Budget* budget) {
    auto nice = to_nice(g, td, s, t);
    return treedp_anchored(g, nice, two_sided, rank, budget);
}

SolveReport solve_treedp(const Graph& g, const TreeDecomposition& td, Problem p, bool rank,
                         int s, int t, const Budget* budget, SolveStats* stats,
                         std::optional<long long> stop_at) {
    if (!is_connected(g)) throw std::runtime_error("disconnected input graph");
    SolveReport rep;
    rep.problem = p;
    rep.algorithm = rank ? "rank" : "twdp";
    rep.n = g.n;
    rep.m = g.m();
    bool two_sided = problem_two_sided(p);
    long long cells = 0;

    if (problem_is_anchored(p)) {
        if (s < 0 || t < 0 || s == t || s >= g.n || t >= g.n)
            throw std::runtime_error("anchored problem needs distinct anchors s, t");
        rep.anchors = std::make_pair(s, t);
        auto res = treedp_st(g, td, s, t, two_sided, rank, budget);
        cells = res.cells;
        if (res.value) {
            rep.optimum = *res.value;
            rep.witness = res.witness;
        }
        if (stats) stats->table_cells = cells;
        return rep;
    }

    if (g.n == 1) {
        if (!two_sided) {
            rep.optimum = 0;
            rep.witness = std::vector<int>{};
        }
        return rep;
    }

    // pivot sweep (see header): pivot = vertex 0
    std::vector<std::pair<int, int>> pairs;
    for (int v = 1; v < g.n; ++v) pairs.push_back({v, 0});
    if (!two_sided)
        for (int v = 1; v < g.n; ++v) pairs.push_back({0, v});

    std::optional<long long> best;
    std::vector<int> bestwit;
    for (auto [a, b] : pairs) {
        auto res = treedp_st(g, td, a, b, two_sided, rank, budget);
        cells += res.cells;
        if (res.value && (!best || *res.value > *best)) {
            best = *res.value;
            bestwit = res.witness;
            if (stop_at && *best >= *stop_at) break;
        }
    }
    if (best) {
        rep.optimum = *best;
        rep.witness = bestwit;
    }
    if (stats) stats->table_cells = cells;
    return rep;
}

}  // namespace cutcraft
