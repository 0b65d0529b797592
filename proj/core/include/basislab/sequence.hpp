#pragma once

#include <cstdint>
#include <vector>

#include "basislab/eval.hpp"
#include "basislab/expr.hpp"

namespace basislab {

// floor(f(x)) with the near-integer guard: when the double value is within
// 1e-6 of an integer the decision is retaken in double-double; if even that
// leaves the value within 1e-25 of an integer the entry is flagged ambiguous.
struct FlooredValue {
    std::int64_t value = 0;
    bool ambiguous = false;
    bool used_extended = false;
};

FlooredValue floor_safely(const FunctionExpr& f, double x);

struct SequenceWindow {
    std::int64_t n_start = 1;
    std::vector<std::int64_t> values;      // values[i] = [f(n_start + i)]
    std::vector<bool> precision_flags;     // entry decided in extended precision / ambiguous
    FunctionExpr f;
    bool increasing = true;                // f' > 0 held at the window probes

    std::int64_t n_at(std::size_t i) const { return n_start + static_cast<std::int64_t>(i); }
};

// values[i] = [f(n_start + i)]; f' is probed at both window ends and the
// window is marked non-increasing (rather than rejected) when it fails.
SequenceWindow gen_sequence(const FunctionExpr& f, std::int64_t n_start, std::int64_t count,
                            int workers = 1);

} // namespace basislab
