#include "basislab/sequence.hpp"

#include <cmath>

#include "basislab/errors.hpp"
#include "basislab/jet.hpp"
#include "basislab/parallel.hpp"

namespace basislab {

FlooredValue floor_safely(const FunctionExpr& f, double x) {
    double v = eval(f, x);
    if (!(std::abs(v) < 4.4e18))
        raise(ErrorKind::Range, "floor_safely: value exceeds the integer width");
    double fl = std::floor(v);
    FlooredValue out;
    if (std::abs(v - std::round(v)) > 1e-6) {
        out.value = static_cast<std::int64_t>(fl);
        return out;
    }
    // near an integer: let double-double decide
    out.used_extended = true;
    Dd w = eval_dd(f, x);
    Dd wf = dd_floor(w);
    out.value = dd_to_int64_exact(wf);
    Dd frac = dd_sub(w, wf);
    double dist = std::min(frac.to_double(), 1.0 - frac.to_double());
    if (dist < 1e-25) out.ambiguous = true;
    return out;
}

SequenceWindow gen_sequence(const FunctionExpr& f, std::int64_t n_start, std::int64_t count,
                            int workers) {
    if (count < 0 || count > 100'000'000)
        raise(ErrorKind::Range, "gen_sequence: count must be in [0, 1e8]");
    if (n_start < 1) raise(ErrorKind::Domain, "gen_sequence: n_start must be >= 1");

    SequenceWindow w;
    w.n_start = n_start;
    w.f = f;
    w.values.resize(static_cast<std::size_t>(count));
    std::vector<char> flags(static_cast<std::size_t>(count), 0);

    parallel_chunks(static_cast<std::size_t>(count), workers,
                    [&](std::size_t, std::size_t lo, std::size_t hi) {
                        for (std::size_t i = lo; i < hi; ++i) {
                            auto fv = floor_safely(f, static_cast<double>(n_start + static_cast<std::int64_t>(i)));
                            w.values[i] = fv.value;
                            flags[i] = fv.ambiguous ? 1 : 0;
                        }
                    });
    w.precision_flags.assign(flags.begin(), flags.end());

    if (count > 0) {
        double first = static_cast<double>(n_start);
        double last = static_cast<double>(n_start + count - 1);
        w.increasing = eval_jet(f, first, 1)[1] > 0.0 && eval_jet(f, last, 1)[1] > 0.0;
        if (w.increasing) {
            for (std::size_t i = 1; i < w.values.size(); ++i)
                if (w.values[i] < w.values[i - 1])
                    raise(ErrorKind::Internal, "gen_sequence: values decrease on an increasing window");
        }
    }
    return w;
}

} // namespace basislab
