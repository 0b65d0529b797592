#include "basislab/exp_sums.hpp"

#include <cmath>

#include "basislab/dd.hpp"
#include "basislab/errors.hpp"
#include "basislab/eval.hpp"
#include "basislab/sequence.hpp"

namespace basislab {

namespace {

inline void unit_phase(double frac, double& c, double& s) {
    double theta = 2.0 * M_PI * frac;
    c = std::cos(theta);
    s = std::sin(theta);
}

inline double frac_alpha_int(double alpha, std::int64_t m) {
    // alpha * m mod 1, exactly enough: split the product into hi/lo
    Dd prod = dd_mul(Dd(alpha), dd_from_int64(m));
    return dd_frac(prod).to_double();
}

} // namespace

std::complex<double> exp_sum_over_values(std::span<const std::int64_t> values, double alpha) {
    KahanComplex acc;
    for (auto m : values) {
        double c, s;
        unit_phase(frac_alpha_int(alpha, m), c, s);
        acc.add(c, s);
    }
    return acc.value();
}

ExpSum exp_sum(const FunctionExpr& f, double alpha, double lo, double hi, SumVariant variant) {
    std::int64_t first = static_cast<std::int64_t>(std::floor(lo)) + 1;
    std::int64_t last = static_cast<std::int64_t>(std::floor(hi));
    if (last - first >= 100'000'000)
        raise(ErrorKind::Capacity, "exp_sum: window exceeds 1e8 terms");

    ExpSum out;
    out.alpha = alpha;
    out.variant = variant;
    KahanComplex acc;
    for (std::int64_t n = first; n <= last; ++n) {
        double frac;
        if (variant == SumVariant::S) {
            auto fv = floor_safely(f, static_cast<double>(n));
            frac = frac_alpha_int(alpha, fv.value);
        } else {
            Dd v = dd_mul(eval_dd(f, static_cast<double>(n)), Dd(alpha));
            frac = dd_frac(v).to_double();
        }
        double c, s;
        unit_phase(frac, c, s);
        acc.add(c, s);
        ++out.terms;
    }
    out.value = acc.value();
    return out;
}

} // namespace basislab
