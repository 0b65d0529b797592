#pragma once

#include <complex>
#include <cstdint>

#include "basislab/expr.hpp"

namespace basislab {

inline constexpr std::int64_t kDefaultPanelBudget = 10'000'000;

// int_{X0}^{X1} e(alpha f(t)) dt by oscillation-aware composite quadrature:
// panels span at most a quarter period of the local phase (width capped at
// 1/(4 |alpha| f'(t))), 7-point Gauss-Legendre on each.  Throws Budget when
// the panel count would exceed the budget; callers on wide minor arcs are
// expected to rely on bounds instead.
std::complex<double> integral_I(const FunctionExpr& f, double alpha, double X0, double X1,
                                std::int64_t panel_budget = kDefaultPanelBudget);

} // namespace basislab
