#pragma once

#include <cstdint>
#include <vector>

namespace basislab {

// Word-level bitset for the sumset kernel; the only non-trivial operation is
// the shift-or used by the fold construction.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    void set(std::size_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }

    // this |= (src << shift), truncated at size()
    void or_shifted(const Bitset& src, std::size_t shift);

    // index of the first set bit >= from, or npos
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t next_set(std::size_t from) const;

    std::size_t count() const;
    bool operator==(const Bitset& other) const { return nbits_ == other.nbits_ && w_ == other.w_; }

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace basislab
