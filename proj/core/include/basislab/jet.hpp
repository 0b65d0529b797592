#pragma once

#include <vector>

#include "basislab/expr.hpp"

namespace basislab {

inline constexpr int kMaxJetOrder = 12;

// (f(x), f'(x), ..., f^(k)(x)) at a point, from Taylor-mode AD through the
// expression tree.
struct Jet {
    double x = 0.0;
    int order = 0;
    std::vector<double> derivs;  // derivs[j] = f^(j)(x), size order+1

    double operator[](int j) const { return derivs[static_cast<std::size_t>(j)]; }
};

// k in [0, 12]; x >= 1.  li differentiates through d/dx li = 1/log x,
// loggamma through the digamma/polygamma series.
Jet eval_jet(const FunctionExpr& f, double x, int k);

} // namespace basislab
