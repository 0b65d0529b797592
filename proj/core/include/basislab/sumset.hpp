#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "basislab/bitset.hpp"
#include "basislab/sequence.hpp"

namespace basislab {

// Attainable values of s-fold sums of the sequence, as bit m <=> m is a sum
// of exactly s elements.  Built by s-1 rounds of shift-or; the result is
// exact, not sampled.  With witnesses enabled (trace), every reachable value
// at every level remembers the first element that reached it (elements are
// processed in increasing order, so ties break toward the smallest one),
// which gives O(s) decomposition of any reachable value.
struct SumsetBitmap {
    int s = 1;
    std::int64_t limit = 0;
    Bitset bits;                                   // level s
    std::vector<std::vector<std::uint32_t>> trace; // trace[t-2][m]: witness at level t >= 2
    std::vector<std::int64_t> elements;            // distinct sorted values <= limit

    bool has_trace() const { return !trace.empty(); }
};

inline constexpr std::int64_t kDefaultBitsetBudget = 1LL << 28;  // bits

SumsetBitmap sumset_fold(const SequenceWindow& seq, int s, std::int64_t limit,
                         std::int64_t bitset_budget = kDefaultBitsetBudget);
// As above, but keeps per-level bitmaps and witnesses for decomposition.
SumsetBitmap sumset_fold_traced(const SequenceWindow& seq, int s, std::int64_t limit,
                                std::int64_t bitset_budget = kDefaultBitsetBudget);

// Decomposes a reachable value into exactly s sequence elements by walking
// the witness arrays.  Requires a traced bitmap.
std::vector<std::int64_t> decompose(const SumsetBitmap& bm, std::int64_t value);

struct GapReport {
    std::int64_t lo = 0, hi = 0;
    std::int64_t max_gap = 0;            // missing integers strictly between consecutive hits
    std::int64_t max_gap_location = -1;  // first missing integer of the widest gap; -1 if none
    std::vector<std::int64_t> gap_histogram;  // index = gap size, value = occurrences
};

// Gaps between consecutive set bits inside [lo, hi]; runs before the first
// or after the last hit are not counted.  Errors when the window holds no
// set bit.
GapReport gap_report(const SumsetBitmap& bm, std::int64_t lo, std::int64_t hi);

} // namespace basislab
