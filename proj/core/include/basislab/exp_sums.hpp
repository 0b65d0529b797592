#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "basislab/expr.hpp"

namespace basislab {

enum class SumVariant { S, T };  // S uses [f(n)], T uses f(n)

struct ExpSum {
    std::complex<double> value;
    std::int64_t terms = 0;
    double alpha = 0.0;
    SumVariant variant = SumVariant::S;
};

// sum over lo < n <= hi of e(alpha [f(n)]) or e(alpha f(n)).  Phases are
// reduced mod 1 in double-double before the 2*pi multiplication: alpha times
// an integer near 1e18 has no fractional bits left in plain doubles.
// Accumulation is compensated.
ExpSum exp_sum(const FunctionExpr& f, double alpha, double lo, double hi, SumVariant variant);

// e(2 pi i frac(alpha * m)) summed over precomputed integer values; the fast
// path used by arc scans which evaluate many alphas over one window.
std::complex<double> exp_sum_over_values(std::span<const std::int64_t> values, double alpha);

// Compensated complex accumulation.
struct KahanComplex {
    double re = 0, im = 0, cre = 0, cim = 0;
    void add(double r, double i) {
        double yr = r - cre, yi = i - cim;
        double tr = re + yr, ti = im + yi;
        cre = (tr - re) - yr;
        cim = (ti - im) - yi;
        re = tr;
        im = ti;
    }
    std::complex<double> value() const { return {re, im}; }
};

} // namespace basislab
