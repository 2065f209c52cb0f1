#pragma once

#include <vector>

#include "cutcraft/partition.hpp"

namespace cutcraft {

struct WeightedPartition {
    Partition p;
    long long w = 0;
};

// Prune a weighted-partition family to a representative subset: for any
// partition q, the best weight among rows whose join with q is the one-block
// partition is unchanged. Works on the GF(2) cut matrix whose columns are the
// 2^(k-1) bipartitions of the ground set with element 0 pinned to the first
// side; a row is kept iff it is independent of the higher-weight rows already
// kept (ties broken toward the smaller canonical encoding). At most 2^(k-1)
// rows survive.
//
// `parts` must all share one ground set {0..k-1}; returns a keep flag per
// input index.
std::vector<char> reduce_weighted_partitions(const std::vector<Partition>& parts,
                                             const std::vector<long long>& ws);

// Set-level wrapper over reduce_weighted_partitions.
std::vector<WeightedPartition> reduce(const std::vector<WeightedPartition>& a);

// Exhaustive check (ground sets up to ~8 elements) that `small` preserves the
// best join-to-one-block weight of `big` for every partition q of {0..k-1}.
bool represents(const std::vector<WeightedPartition>& small,
                const std::vector<WeightedPartition>& big, int k);

}  // namespace cutcraft
