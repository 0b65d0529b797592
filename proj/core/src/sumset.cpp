#include "basislab/sumset.hpp"

#include <algorithm>
#include <bit>

#include "basislab/errors.hpp"

namespace basislab {

void Bitset::or_shifted(const Bitset& src, std::size_t shift) {
    if (shift >= nbits_) return;
    const std::size_t q = shift >> 6;
    const unsigned r = static_cast<unsigned>(shift & 63);
    const std::size_t nw = w_.size();
    const std::size_t sw = src.w_.size();
    if (r == 0) {
        for (std::size_t i = 0; i + q < nw && i < sw; ++i) w_[i + q] |= src.w_[i];
    } else {
        for (std::size_t i = 0; i + q < nw && i < sw; ++i) {
            w_[i + q] |= src.w_[i] << r;
            if (i + q + 1 < nw) w_[i + q + 1] |= src.w_[i] >> (64 - r);
        }
    }
    // clear bits past size() in the top word
    const unsigned tail = static_cast<unsigned>(nbits_ & 63);
    if (tail) w_.back() &= (~0ULL) >> (64 - tail);
}

std::size_t Bitset::next_set(std::size_t from) const {
    if (from >= nbits_) return npos;
    std::size_t wi = from >> 6;
    std::uint64_t word = w_[wi] & (~0ULL << (from & 63));
    for (;;) {
        if (word) {
            std::size_t bit = (wi << 6) + static_cast<std::size_t>(std::countr_zero(word));
            return bit < nbits_ ? bit : npos;
        }
        if (++wi >= w_.size()) return npos;
        word = w_[wi];
    }
}

std::size_t Bitset::count() const {
    std::size_t n = 0;
    for (auto x : w_) n += static_cast<std::size_t>(std::popcount(x));
    return n;
}

namespace {

std::vector<std::int64_t> distinct_elements(const SequenceWindow& seq, std::int64_t limit) {
    std::vector<std::int64_t> vals;
    vals.reserve(seq.values.size());
    for (std::size_t i = 0; i < seq.values.size(); ++i) {
        std::int64_t v = seq.values[i];
        if (v >= 1 && v <= limit) vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

void check_fold_args(int s, std::int64_t limit, std::int64_t budget) {
    if (s < 1) raise(ErrorKind::Range, "sumset_fold: s must be >= 1");
    if (limit < 0) raise(ErrorKind::Range, "sumset_fold: negative limit");
    if (limit + 1 > budget)
        raise(ErrorKind::Capacity, "sumset_fold: limit exceeds the bitset budget");
}

} // namespace

SumsetBitmap sumset_fold(const SequenceWindow& seq, int s, std::int64_t limit,
                         std::int64_t bitset_budget) {
    check_fold_args(s, limit, bitset_budget);
    SumsetBitmap bm;
    bm.s = s;
    bm.limit = limit;
    bm.elements = distinct_elements(seq, limit);

    const std::size_t nbits = static_cast<std::size_t>(limit) + 1;
    Bitset level(nbits);
    for (auto v : bm.elements) level.set(static_cast<std::size_t>(v));
    for (int t = 2; t <= s; ++t) {
        Bitset next(nbits);
        for (auto v : bm.elements) next.or_shifted(level, static_cast<std::size_t>(v));
        level = std::move(next);
    }
    bm.bits = std::move(level);
    return bm;
}

SumsetBitmap sumset_fold_traced(const SequenceWindow& seq, int s, std::int64_t limit,
                                std::int64_t bitset_budget) {
    check_fold_args(s, limit, bitset_budget);
    if (limit >= (1LL << 31))
        raise(ErrorKind::Capacity, "sumset_fold_traced: traced folds support limit < 2^31");
    SumsetBitmap bm;
    bm.s = s;
    bm.limit = limit;
    bm.elements = distinct_elements(seq, limit);

    const std::size_t nbits = static_cast<std::size_t>(limit) + 1;
    Bitset level(nbits);
    for (auto v : bm.elements) level.set(static_cast<std::size_t>(v));
    bm.trace.assign(static_cast<std::size_t>(s > 1 ? s - 1 : 0), {});

    for (int t = 2; t <= s; ++t) {
        Bitset next(nbits);
        auto& wit = bm.trace[static_cast<std::size_t>(t - 2)];
        wit.assign(nbits, 0);
        const auto& prev_words = level.words();
        auto& next_words = next.words();
        for (auto v : bm.elements) {
            // shifted = level << v, recording which bits are new
            const std::size_t shift = static_cast<std::size_t>(v);
            if (shift >= nbits) break;  // elements sorted; the rest only grow
            const std::size_t q = shift >> 6;
            const unsigned r = static_cast<unsigned>(shift & 63);
            const std::size_t nw = next_words.size();
            for (std::size_t i = 0; i + q < nw && i < prev_words.size(); ++i) {
                std::uint64_t lowpart = r == 0 ? prev_words[i] : prev_words[i] << r;
                std::uint64_t newbits = lowpart & ~next_words[i + q];
                if (newbits) {
                    next_words[i + q] |= newbits;
                    std::size_t base = (i + q) << 6;
                    while (newbits) {
                        unsigned b = static_cast<unsigned>(std::countr_zero(newbits));
                        std::size_t m = base + b;
                        if (m < nbits) wit[m] = static_cast<std::uint32_t>(v);
                        newbits &= newbits - 1;
                    }
                }
                if (r != 0 && i + q + 1 < nw) {
                    std::uint64_t highpart = prev_words[i] >> (64 - r);
                    std::uint64_t newhigh = highpart & ~next_words[i + q + 1];
                    if (newhigh) {
                        next_words[i + q + 1] |= newhigh;
                        std::size_t base = (i + q + 1) << 6;
                        while (newhigh) {
                            unsigned b = static_cast<unsigned>(std::countr_zero(newhigh));
                            std::size_t m = base + b;
                            if (m < nbits) wit[m] = static_cast<std::uint32_t>(v);
                            newhigh &= newhigh - 1;
                        }
                    }
                }
            }
        }
        const unsigned tail = static_cast<unsigned>(nbits & 63);
        if (tail) next_words.back() &= (~0ULL) >> (64 - tail);
        level = std::move(next);
    }
    bm.bits = std::move(level);
    return bm;
}

std::vector<std::int64_t> decompose(const SumsetBitmap& bm, std::int64_t value) {
    if (!bm.has_trace() && bm.s > 1)
        raise(ErrorKind::Range, "decompose: bitmap was built without a trace");
    if (value < 0 || value > bm.limit || !bm.bits.test(static_cast<std::size_t>(value)))
        raise(ErrorKind::Range, "decompose: value not reachable at this fold level");
    std::vector<std::int64_t> parts;
    std::int64_t rem = value;
    for (int t = bm.s; t >= 2; --t) {
        std::uint32_t w = bm.trace[static_cast<std::size_t>(t - 2)][static_cast<std::size_t>(rem)];
        if (w == 0 || w > static_cast<std::uint32_t>(rem))
            raise(ErrorKind::Internal, "decompose: inconsistent witness chain");
        parts.push_back(static_cast<std::int64_t>(w));
        rem -= static_cast<std::int64_t>(w);
    }
    if (!std::binary_search(bm.elements.begin(), bm.elements.end(), rem))
        raise(ErrorKind::Internal, "decompose: leftover is not a sequence element");
    parts.push_back(rem);
    return parts;
}

GapReport gap_report(const SumsetBitmap& bm, std::int64_t lo, std::int64_t hi) {
    if (lo < 0 || hi > bm.limit || lo > hi)
        raise(ErrorKind::Range, "gap_report: window outside [0, limit]");
    GapReport rep;
    rep.lo = lo;
    rep.hi = hi;
    std::size_t cur = bm.bits.next_set(static_cast<std::size_t>(lo));
    if (cur == Bitset::npos || cur > static_cast<std::size_t>(hi))
        raise(ErrorKind::Range, "gap_report: no set bit in the window");
    std::int64_t prev = static_cast<std::int64_t>(cur);
    std::vector<std::int64_t> hist(1, 0);
    for (;;) {
        std::size_t nxt = bm.bits.next_set(static_cast<std::size_t>(prev) + 1);
        if (nxt == Bitset::npos || nxt > static_cast<std::size_t>(hi)) break;
        std::int64_t gap = static_cast<std::int64_t>(nxt) - prev - 1;
        if (gap >= static_cast<std::int64_t>(hist.size())) hist.resize(static_cast<std::size_t>(gap) + 1, 0);
        ++hist[static_cast<std::size_t>(gap)];
        if (gap > rep.max_gap) {
            rep.max_gap = gap;
            rep.max_gap_location = prev + 1;
        }
        prev = static_cast<std::int64_t>(nxt);
    }
    rep.gap_histogram = std::move(hist);
    return rep;
}

} // namespace basislab
