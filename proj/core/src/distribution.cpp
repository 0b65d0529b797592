#include "basislab/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "basislab/dd.hpp"
#include "basislab/errors.hpp"
#include "basislab/eval.hpp"
#include "basislab/parallel.hpp"
#include "basislab/sequence.hpp"

namespace basislab {

bool ResidueCoverage::full() const {
    return std::all_of(attained.begin(), attained.end(), [](bool b) { return b; });
}

std::vector<std::int64_t> ResidueCoverage::residues() const {
    std::vector<std::int64_t> out;
    for (std::size_t r = 0; r < attained.size(); ++r)
        if (attained[r]) out.push_back(static_cast<std::int64_t>(r));
    return out;
}

ResidueCoverage residue_coverage(const FunctionExpr& f, std::int64_t q, std::int64_t n_max) {
    if (q < 1) raise(ErrorKind::Range, "residue_coverage: q must be >= 1");
    ResidueCoverage cov;
    cov.q = q;
    cov.attained.assign(static_cast<std::size_t>(q), false);
    std::int64_t seen = 0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        auto fv = floor_safely(f, static_cast<double>(n));
        std::int64_t r = fv.value % q;
        if (r < 0) r += q;
        if (!cov.attained[static_cast<std::size_t>(r)]) {
            cov.attained[static_cast<std::size_t>(r)] = true;
            if (++seen == q) {
                cov.first_full_n = n;
                break;
            }
        }
    }
    return cov;
}

FractionalDensity fractional_density(const FunctionExpr& f, std::int64_t q, std::int64_t n_max,
                                     int bins, int workers) {
    if (bins < 2) raise(ErrorKind::Range, "fractional_density: bins must be >= 2");
    if (q < 1) raise(ErrorKind::Range, "fractional_density: q must be >= 1");
    if (n_max < 1) raise(ErrorKind::Range, "fractional_density: n_max must be >= 1");

    FractionalDensity out;
    out.q = q;
    out.bins = bins;
    out.n_max = n_max;

    const std::size_t nchunks = parallel_chunk_count(static_cast<std::size_t>(n_max));
    std::vector<std::vector<std::int64_t>> partial(nchunks);
    parallel_chunks(static_cast<std::size_t>(n_max), workers,
                    [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
                        auto& h = partial[chunk];
                        h.assign(static_cast<std::size_t>(bins), 0);
                        for (std::size_t i = lo; i < hi; ++i) {
                            double n = static_cast<double>(i + 1);
                            Dd v = dd_div(eval_dd(f, n), Dd(static_cast<double>(q)));
                            double frac = dd_frac(v).to_double();
                            auto b = static_cast<std::size_t>(frac * bins);
                            if (b >= static_cast<std::size_t>(bins)) b = static_cast<std::size_t>(bins) - 1;
                            ++h[b];
                        }
                    });
    out.counts.assign(static_cast<std::size_t>(bins), 0);
    for (const auto& h : partial)
        for (std::size_t b = 0; b < h.size(); ++b) out.counts[b] += h[b];

    const double expected = static_cast<double>(n_max) / bins;
    for (auto c : out.counts)
        out.max_rel_deviation =
            std::max(out.max_rel_deviation, std::abs(static_cast<double>(c) / expected - 1.0));
    return out;
}

} // namespace basislab
