#pragma once

#include <cstdint>
#include <vector>

#include "basislab/expr.hpp"

namespace basislab {

// Residues mod q attained by [f(n)], n <= n_max.  Stops early once all q
// residues have appeared.  Full coverage is evidence for the coprimality
// hypothesis of the basis certificate; it is sufficient, not necessary.
struct ResidueCoverage {
    std::int64_t q = 1;
    std::vector<bool> attained;
    std::int64_t first_full_n = -1;  // smallest n at which coverage became full, -1 if never

    bool full() const;
    std::vector<std::int64_t> residues() const;
};

ResidueCoverage residue_coverage(const FunctionExpr& f, std::int64_t q, std::int64_t n_max);

// Histogram of the fractional parts {f(n)/q} over n <= n_max.  The values
// are reduced mod 1 in double-double: f(n) can be near 1e18 where plain
// doubles have no fractional bits left.
struct FractionalDensity {
    std::int64_t q = 1;
    int bins = 10;
    std::int64_t n_max = 0;
    std::vector<std::int64_t> counts;
    double max_rel_deviation = 0.0;  // max over bins of |observed/expected - 1|
};

FractionalDensity fractional_density(const FunctionExpr& f, std::int64_t q, std::int64_t n_max,
                                     int bins, int workers = 1);

} // namespace basislab
