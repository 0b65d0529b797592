#pragma once

#include <cstdint>
#include <vector>

#include "basislab/sequence.hpp"
#include "basislab/sumset.hpp"

namespace basislab {

// Constructive basis certificate: integer coefficients x_2..x_k with
// sum_j x_j (a_j - a_1) = 1 over the smallest prefix a_1..a_k whose
// differences are coprime, plus the measured sumset data (largest gap g,
// least element M) that turns the certificate into an explicit
// representation recipe of order at most s + g * sum |x_j|.
struct BasisCertificate {
    int k = 0;
    std::vector<std::int64_t> prefix;        // a_1..a_k
    std::vector<std::int64_t> coefficients;  // x_2..x_k
    int s = 0;
    std::int64_t g = 0;                      // largest gap of the s-fold sumset
    std::int64_t M = 0;                      // least element of the s-fold sumset
    std::int64_t order_bound = 0;            // s + g * sum |x_j|

    std::int64_t coef_abs_sum() const;
    void attach_gap_info(int s_fold, std::int64_t gap, std::int64_t least);
};

// Smallest prefix with gcd(a_2 - a_1, ..., a_k - a_1) = 1 (prefix search
// capped at 1e4 terms) and an exact extended-gcd coefficient vector.
// Throws when the gcd over the whole window stays > 1.
BasisCertificate gcd_bezout(const SequenceWindow& seq);

// Explicit representation of N as a multiset of sequence elements, following
// the certificate: split off g * sum |x_j| copies of the a_j'/a_j'' pattern,
// land the rest in the s-fold sumset, and decompose it through the fold
// trace.  The result sums to N exactly and has size <= order_bound.
std::vector<std::int64_t> represent_with_certificate(std::int64_t N, const SequenceWindow& seq,
                                                     int s, const BasisCertificate& cert,
                                                     const SumsetBitmap& bm);

} // namespace basislab
