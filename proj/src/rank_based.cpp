#include "cutcraft/rankreduce.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cutcraft {

namespace {

// cut-matrix row of p: bit C (element 0 implicitly on the first side) is 1
// iff joining p with the bipartition {C, ~C} collapses everything into one
// block — i.e. C is the full set, or some block of p straddles the cut.
// Equivalently: all ones except the proper cuts every block of p respects.
std::vector<uint64_t> cut_row(const Partition& p, int k, int words) {
    std::vector<uint64_t> row(words, ~0ull);
    int ncols = 1 << (k - 1);
    int rem = ncols & 63;
    if (rem) row[words - 1] = (1ull << rem) - 1;

    // block bitmasks; block 0 holds element 0
    uint32_t bm[kMaxPart];
    int nb = 0;
    int idx_of[kMaxPart];
    for (int i = 0; i < k; ++i) {
        if (p.code[i] == i) {
            idx_of[i] = nb;
            bm[nb++] = 0;
        }
        bm[idx_of[p.code[i]]] |= 1u << i;
    }
    uint32_t full = ((uint32_t)1 << k) - 1;
    // unions of blocks that include element 0's block = cuts respecting p
    int others = nb - 1;
    for (uint32_t sub = 0;; ++sub) {
        uint32_t c = bm[0];
        for (int j = 0; j < others; ++j)
            if (sub >> j & 1) c |= bm[j + 1];
        if (c != full) {
            uint32_t col = c >> 1;  // element 0 always present
            row[col >> 6] &= ~(1ull << (col & 63));
        }
        if (sub + 1 >= (1u << others)) break;
    }
    return row;
}

}  // namespace

std::vector<char> reduce_weighted_partitions(const std::vector<Partition>& parts,
                                             const std::vector<long long>& ws) {
    size_t n = parts.size();
    if (n != ws.size()) throw std::invalid_argument("parts/weights size mismatch");
    std::vector<char> keep(n, 0);
    if (n == 0) return keep;
    int k = parts[0].k;
    for (const auto& p : parts)
        if (p.k != k) throw std::invalid_argument("mixed ground sets in reduce");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (ws[a] != ws[b]) return ws[a] > ws[b];
        return parts[a] < parts[b];
    });

    if (k <= 1) {  // one column; the single best row spans everything
        keep[order[0]] = 1;
        return keep;
    }

    int ncols = 1 << (k - 1);
    int words = (ncols + 63) >> 6;
    std::vector<std::vector<uint64_t>> basis;      // reduced pivot rows
    std::vector<int> pivot;                        // pivot column per basis row
    basis.reserve(std::min((size_t)ncols, n));
    for (int id : order) {
        std::vector<uint64_t> row = cut_row(parts[id], k, words);
        for (size_t b = 0; b < basis.size(); ++b)
            if (row[pivot[b] >> 6] >> (pivot[b] & 63) & 1)
                for (int w = 0; w < words; ++w) row[w] ^= basis[b][w];
        int pc = -1;
        for (int w = 0; w < words && pc < 0; ++w)
            if (row[w]) pc = (w << 6) + __builtin_ctzll(row[w]);
        if (pc < 0) continue;  // dependent: dominated by kept rows
        keep[id] = 1;
        basis.push_back(std::move(row));
        pivot.push_back(pc);
        if ((int)basis.size() == ncols) break;  // full rank already
    }
    return keep;
}

std::vector<WeightedPartition> reduce(const std::vector<WeightedPartition>& a) {
    std::vector<Partition> parts(a.size());
    std::vector<long long> ws(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        parts[i] = a[i].p;
        ws[i] = a[i].w;
    }
    auto kept = reduce_weighted_partitions(parts, ws);
    std::vector<WeightedPartition> out;
    for (size_t i = 0; i < a.size(); ++i)
        if (kept[i]) out.push_back(a[i]);
    return out;
}

bool represents(const std::vector<WeightedPartition>& small,
                const std::vector<WeightedPartition>& big, int k) {
    for (const auto& wp : small)
        if (wp.p.k != k) throw std::invalid_argument("ground-set mismatch");
    for (const auto& wp : big)
        if (wp.p.k != k) throw std::invalid_argument("ground-set mismatch");
    Partition top = one_block(k);
    auto best = [&](const std::vector<WeightedPartition>& set, const Partition& q,
                    long long& out) {
        bool any = false;
        for (const auto& wp : set)
            if (join_partitions(wp.p, q) == top) {
                if (!any || wp.w > out) out = wp.w;
                any = true;
            }
        return any;
    };
    for (const Partition& q : all_partitions(k)) {
        long long a = 0, b = 0;
        bool ha = best(small, q, a), hb = best(big, q, b);
        if (ha != hb || (ha && a != b)) return false;
    }
    return true;
}

}  // namespace cutcraft
