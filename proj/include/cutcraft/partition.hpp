#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace cutcraft {

// Partition of {0..k-1} in canonical form: code[i] is the smallest element of
// the block containing i. k is capped at 24 so a partition packs into two
// words (5 bits per element) for table keys.
constexpr int kMaxPart = 24;

struct Partition {
    uint8_t k = 0;
    std::array<uint8_t, kMaxPart> code{};

    bool operator==(const Partition& o) const {
        if (k != o.k) return false;
        for (int i = 0; i < k; ++i)
            if (code[i] != o.code[i]) return false;
        return true;
    }
    bool operator<(const Partition& o) const {
        if (k != o.k) return k < o.k;
        for (int i = 0; i < k; ++i)
            if (code[i] != o.code[i]) return code[i] < o.code[i];
        return false;
    }

    std::pair<uint64_t, uint64_t> pack() const {
        uint64_t a = 0, b = 0;
        for (int i = 0; i < k && i < 12; ++i) a |= (uint64_t)code[i] << (5 * i);
        for (int i = 12; i < k; ++i) b |= (uint64_t)code[i] << (5 * (i - 12));
        return {a | ((uint64_t)k << 59), b};
    }

    int blocks() const {
        int c = 0;
        for (int i = 0; i < k; ++i) c += code[i] == i;
        return c;
    }
    int block_size(int i) const {
        int c = 0;
        for (int j = 0; j < k; ++j) c += code[j] == code[i];
        return c;
    }
    bool same_block(int i, int j) const { return code[i] == code[j]; }
};

// canonicalize arbitrary block labels (same label <=> same block)
Partition canonical_partition(const uint8_t* labels, int k);

Partition singletons(int k);
Partition one_block(int k);

// finest common coarsening
Partition join_partitions(const Partition& p, const Partition& q);

Partition merge_blocks(const Partition& p, int i, int j);
Partition insert_singleton(const Partition& p, int pos);
Partition erase_element(const Partition& p, int pos);

// all partitions of {0..k-1} via restricted growth strings, lexicographic
std::vector<Partition> all_partitions(int k);

}  // namespace cutcraft
