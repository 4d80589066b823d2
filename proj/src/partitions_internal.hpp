#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "check_internal.hpp"

// Enumeration of v-exponent multisets.  A "partition of W" here is a choice
// of exponents r_i >= 1 on indices i >= 1 with sum r_i (2^i - 1) = W.
namespace realchrom::detail {

using Parts = std::vector<std::pair<int, long long>>;  // (index, exponent)

inline long long idxWeight(int i) {
    RC_CHECK(i >= 0 && i < 62, "v-index out of supported range");
    return (1LL << i) - 1;
}

inline void forEachPartitionImpl(long long W, int lo, int hi, Parts& acc,
                                 const std::function<void(const Parts&)>& fn) {
    if (W == 0) {
        fn(acc);
        return;
    }
    while (hi >= lo && idxWeight(hi) > W) --hi;
    if (W < 0 || hi < lo) return;
    // skip index hi entirely, then each positive exponent
    forEachPartitionImpl(W, lo, hi - 1, acc, fn);
    long long w = idxWeight(hi);
    acc.push_back({hi, 0});
    for (long long e = 1; e * w <= W; ++e) {
        acc.back().second = e;
        forEachPartitionImpl(W - e * w, lo, hi - 1, acc, fn);
    }
    acc.pop_back();
}

// All partitions of W over indices in [lo, hi]; parts arrive in descending
// index order.  hi may be generous; it is clamped by the weight bound.
inline void forEachPartition(long long W, int lo, int hi,
                             const std::function<void(const Parts&)>& fn) {
    if (W < 0 || lo < 1) return;
    Parts acc;
    forEachPartitionImpl(W, lo, std::min(hi, 61), acc, fn);
}

// Partitions of W whose minimal index is exactly m (indices range up to hi).
inline void forEachPartitionMinExact(long long W, int m, int hi,
                                     const std::function<void(const Parts&)>& fn) {
    long long wm = idxWeight(m);
    if (W < wm) return;
    forEachPartition(W - wm, m, hi, [&](const Parts& p) {
        Parts q = p;  // descending index order, so index m sits at the back
        if (!q.empty() && q.back().first == m)
            q.back().second += 1;
        else
            q.push_back({m, 1});
        fn(q);
    });
}

inline long long partsWeight(const Parts& p) {
    long long w = 0;
    for (auto& [i, e] : p) w += e * idxWeight(i);
    return w;
}

inline int partsMin(const Parts& p) {
    int m = 1 << 30;
    for (auto& [i, e] : p) {
        (void)e;
        m = std::min(m, i);
    }
    return m;
}

}  // namespace realchrom::detail
