#include "basislab/counts.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "basislab/errors.hpp"
#include "basislab/exp_sums.hpp"
#include "basislab/sequence.hpp"

namespace basislab {

namespace {

// value -> multiplicity of [f(n)] over X0 < n <= X1
std::map<std::int64_t, std::int64_t> window_values(const FunctionExpr& f, double X0, double X1) {
    std::int64_t first = static_cast<std::int64_t>(std::floor(X0)) + 1;
    std::int64_t last = static_cast<std::int64_t>(std::floor(X1));
    std::map<std::int64_t, std::int64_t> mult;
    for (std::int64_t n = first; n <= last; ++n) {
        auto fv = floor_safely(f, static_cast<double>(n));
        ++mult[fv.value];
    }
    return mult;
}

} // namespace

std::int64_t count_R_direct(const FunctionExpr& f, std::int64_t N, int s, double X0, double X1,
                            std::int64_t table_budget) {
    if (s < 1) raise(ErrorKind::Range, "count_R_direct: s must be >= 1");
    if (N < 0) return 0;
    if (N + 1 > table_budget)
        raise(ErrorKind::Capacity, "count_R_direct: N exceeds the convolution table budget");
    auto mult = window_values(f, X0, X1);

    std::vector<std::int64_t> cur(static_cast<std::size_t>(N) + 1, 0);
    for (const auto& [v, m] : mult)
        if (v >= 0 && v <= N) cur[static_cast<std::size_t>(v)] += m;
    for (int t = 2; t <= s; ++t) {
        std::vector<std::int64_t> next(static_cast<std::size_t>(N) + 1, 0);
        for (const auto& [v, m] : mult) {
            if (v < 0 || v > N) continue;
            const std::size_t off = static_cast<std::size_t>(v);
            for (std::size_t i = 0; i + off <= static_cast<std::size_t>(N); ++i)
                if (cur[i]) next[i + off] += cur[i] * m;
        }
        cur = std::move(next);
    }
    return cur[static_cast<std::size_t>(N)];
}

double circle_R_numeric(const FunctionExpr& f, std::int64_t N, int s, double X0, double X1,
                        std::int64_t grid) {
    if (s < 1) raise(ErrorKind::Range, "circle_R_numeric: s must be >= 1");
    auto mult = window_values(f, X0, X1);
    if (mult.empty()) return 0.0;
    std::int64_t max_val = mult.rbegin()->first;
    std::int64_t min_val = mult.begin()->first;
    if (grid <= 2 * s * max_val)
        raise(ErrorKind::Range, "circle_R_numeric: grid <= 2 s max[f(n)] would alias");

    // empty representation set: every s-fold sum lies in [s min, s max]
    if (N > s * max_val || N < s * min_val) return 0.0;

    // e(j/grid) table; alpha_j = -1/2 + j/grid contributes (-1)^m per value
    const auto g = static_cast<std::size_t>(grid);
    std::vector<std::complex<double>> root(g);
    for (std::size_t j = 0; j < g; ++j) {
        double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(grid);
        root[j] = {std::cos(th), std::sin(th)};
    }
    std::vector<std::pair<std::int64_t, double>> vals;
    vals.reserve(mult.size());
    for (const auto& [v, m] : mult) vals.emplace_back(v, static_cast<double>(m));

    KahanComplex acc;
    const bool n_odd = (N % 2 + 2) % 2 == 1;
    for (std::size_t j = 0; j < g; ++j) {
        KahanComplex sj;
        for (const auto& [v, m] : vals) {
            std::size_t idx = static_cast<std::size_t>(
                (static_cast<unsigned long long>(j) * static_cast<unsigned long long>(v)) % g);
            double sgn = (v & 1) ? -1.0 : 1.0;  // e(-m/2)
            sj.add(sgn * m * root[idx].real(), sgn * m * root[idx].imag());
        }
        std::complex<double> Sj = sj.value();
        std::complex<double> p = 1.0;
        for (int t = 0; t < s; ++t) p *= Sj;
        std::size_t idxN = static_cast<std::size_t>(
            (static_cast<unsigned long long>(j) * static_cast<unsigned long long>(N)) % g);
        std::complex<double> eN = std::conj(root[idxN]);
        if (n_odd) eN = -eN;
        std::complex<double> term = p * eN;
        acc.add(term.real(), term.imag());
    }
    return acc.value().real() / static_cast<double>(grid);
}

} // namespace basislab
