#pragma once

#include <cstdint>

#include "basislab/expr.hpp"

namespace basislab {

// Number of ordered tuples (n_1..n_s), X0 < n_i <= X1, with
// [f(n_1)] + ... + [f(n_s)] = N.  Exact, via s-1 integer histogram
// convolutions truncated at N.
std::int64_t count_R_direct(const FunctionExpr& f, std::int64_t N, int s, double X0, double X1,
                            std::int64_t table_budget = 10'000'000);

// The same count through the orthogonality integral: the mean of
// S(alpha)^s e(-alpha N) over the grid alpha_j = -1/2 + j/grid.  The
// integrand is a trigonometric polynomial with integer frequencies, so once
// grid > 2 s max[f(n)] the discretization is exact up to rounding; the
// phases are exact roots of unity from a precomputed table.  Refuses to
// alias: grid at or below the Nyquist bound is an error.
double circle_R_numeric(const FunctionExpr& f, std::int64_t N, int s, double X0, double X1,
                        std::int64_t grid);

} // namespace basislab
