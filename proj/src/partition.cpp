#include "cutcraft/partition.hpp"

#include <cassert>

namespace cutcraft {

Partition canonical_partition(const uint8_t* labels, int k) {
    assert(k <= kMaxPart);
    Partition p;
    p.k = (uint8_t)k;
    for (int i = 0; i < k; ++i) {
        int m = i;
        for (int j = 0; j < i; ++j)
            if (labels[j] == labels[i]) {
                m = j;
                break;
            }
        p.code[i] = (uint8_t)m;
    }
    return p;
}

Partition singletons(int k) {
    Partition p;
    p.k = (uint8_t)k;
    for (int i = 0; i < k; ++i) p.code[i] = (uint8_t)i;
    return p;
}

Partition one_block(int k) {
    Partition p;
    p.k = (uint8_t)k;
    return p;  // all zero
}

Partition join_partitions(const Partition& p, const Partition& q) {
    assert(p.k == q.k);
    int k = p.k;
    std::array<uint8_t, kMaxPart> parent{};
    for (int i = 0; i < k; ++i) parent[i] = (uint8_t)i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a > b) std::swap(a, b);
        parent[b] = (uint8_t)a;  // smaller root wins: roots end up block minima
    };
    for (int i = 0; i < k; ++i) {
        unite(i, p.code[i]);
        unite(i, q.code[i]);
    }
    Partition r;
    r.k = (uint8_t)k;
    for (int i = 0; i < k; ++i) r.code[i] = (uint8_t)find(i);
    return r;
}

Partition merge_blocks(const Partition& p, int i, int j) {
    uint8_t lo = std::min(p.code[i], p.code[j]), hi = std::max(p.code[i], p.code[j]);
    Partition r = p;
    if (lo == hi) return r;
    for (int x = 0; x < p.k; ++x)
        if (r.code[x] == hi) r.code[x] = lo;
    return r;
}

Partition insert_singleton(const Partition& p, int pos) {
    assert(p.k + 1 <= kMaxPart);
    Partition r;
    r.k = (uint8_t)(p.k + 1);
    for (int i = 0; i < r.k; ++i) {
        if (i == pos) {
            r.code[i] = (uint8_t)pos;
            continue;
        }
        int old = i < pos ? i : i - 1;
        int c = p.code[old];
        r.code[i] = (uint8_t)(c < pos ? c : c + 1);
    }
    return r;
}

Partition erase_element(const Partition& p, int pos) {
    uint8_t labels[kMaxPart];
    int k = 0;
    for (int i = 0; i < p.k; ++i)
        if (i != pos) labels[k++] = p.code[i];
    return canonical_partition(labels, k);
}

std::vector<Partition> all_partitions(int k) {
    std::vector<Partition> out;
    if (k == 0) {
        out.push_back(Partition{});
        return out;
    }
    std::vector<uint8_t> a(k, 0);
    for (;;) {
        out.push_back(canonical_partition(a.data(), k));
        // next restricted growth string
        int i = k - 1;
        for (; i > 0; --i) {
            uint8_t mx = 0;
            for (int j = 0; j < i; ++j) mx = std::max(mx, a[j]);
            if (a[i] <= mx) break;
        }
        if (i == 0) break;
        ++a[i];
        for (int j = i + 1; j < k; ++j) a[j] = 0;
    }
    return out;
}

}  // namespace cutcraft
