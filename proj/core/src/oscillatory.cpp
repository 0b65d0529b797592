#include "basislab/oscillatory.hpp"

#include <array>
#include <cmath>

#include "basislab/errors.hpp"
#include "basislab/eval.hpp"
#include "basislab/exp_sums.hpp"
#include "basislab/jet.hpp"

namespace basislab {

namespace {

// 7-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 7> kGlNodes = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0,
    0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
constexpr std::array<double, 7> kGlWeights = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

} // namespace

std::complex<double> integral_I(const FunctionExpr& f, double alpha, double X0, double X1,
                                std::int64_t panel_budget) {
    if (!(X0 < X1)) raise(ErrorKind::Range, "integral_I: X0 must be < X1");
    if (alpha == 0.0) return {X1 - X0, 0.0};

    const double span = X1 - X0;
    const double abs_alpha = std::abs(alpha);
    KahanComplex acc;
    std::int64_t panels = 0;
    double t = X0;
    while (t < X1) {
        // quarter-period cap from the local phase speed, iterated once so a
        // growing f' cannot stretch the panel past its own cap
        double fp = std::abs(eval_jet(f, t, 1)[1]);
        double h = span;
        if (abs_alpha * fp > 0.0) h = std::min(h, 1.0 / (4.0 * abs_alpha * fp));
        double fp2 = std::abs(eval_jet(f, std::min(t + h, X1), 1)[1]);
        if (abs_alpha * fp2 > 0.0) h = std::min(h, 1.0 / (4.0 * abs_alpha * fp2));
        h = std::min(h, X1 - t);
        if (++panels > panel_budget)
            raise(ErrorKind::Budget, "integral_I: panel budget exceeded");
        double mid = t + 0.5 * h;
        double half = 0.5 * h;
        for (int i = 0; i < 7; ++i) {
            double u = mid + half * kGlNodes[i];
            double phase = 2.0 * M_PI * alpha * eval(f, u);
            double w = half * kGlWeights[i];
            acc.add(w * std::cos(phase), w * std::sin(phase));
        }
        t += h;
    }
    return acc.value();
}

} // namespace basislab
