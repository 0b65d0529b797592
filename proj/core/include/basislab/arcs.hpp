#pragma once

#include <cstdint>

#include "basislab/classify.hpp"
#include "basislab/expr.hpp"

namespace basislab {

// Geometry of one representation problem: the summation window (X0, X1]
// where f passes from N/(s+1) to 2N/(s+1), the scale X = N^(1/d), and the
// major-arc half-width omega = X^(1/2 - d).
struct ArcParams {
    std::int64_t N = 0;
    int s = 1;
    double d = 1.0;   // degree of f (real for class II)
    double X = 0.0;
    double Ns = 0.0;  // N / (s + 1)
    double X0 = 0.0;  // f(X0) = Ns
    double X1 = 0.0;  // f(X1) = 2 Ns
    double omega = 0.0;
};

ArcParams arc_params(const FunctionExpr& f, const DegreeProfile& profile, std::int64_t N, int s);

// Monotone root solve f(x) = target on x >= lo, bisection plus Newton
// polish; |f(x) - target| <= 1e-10 * target on return.
double solve_increasing(const FunctionExpr& f, double target, double lo = 1.0);

} // namespace basislab
