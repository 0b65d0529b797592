#pragma once

#include <optional>
#include <vector>

#include "basislab/expr.hpp"

namespace basislab {

// Growth trichotomy: I polynomial, II non-polynomial, III polynomial plus a
// strictly smaller non-polynomial part.
enum class FnClass { I, II, III };

struct DegreeProfile {
    FnClass cls = FnClass::I;
    int d = 0;                           // polynomial degree (I/III); rounded real degree for II
    double c = 0.0;                      // degree of the non-polynomial part (II: the degree)
    double c_real = 0.0;                 // raw estimated growth exponent
    bool subpolynomial_remainder = true; // r(x) << x^delta for all delta > 0 (estimated)
    std::vector<double> poly;            // alpha_1..alpha_d, no constant term; empty for II

    // real degree d_f as used by the arc geometry: I/III -> d, II -> c
    double degree() const { return cls == FnClass::II ? c : static_cast<double>(d); }
};

// Probe-based classification.  With `declared` (symbolic knowledge) the
// profile is validated against the probes and returned; otherwise the growth
// exponent is estimated from doubling-window slopes of log f / log x,
// extrapolated in 1/log x, and the class is decided from polynomial-part
// extraction behaviour.  Throws Growth when the slope does not stabilize and
// Ambiguity when the probes cannot separate class II from III.
DegreeProfile classify(const FunctionExpr& f,
                       const std::optional<DegreeProfile>& declared = std::nullopt);

// alpha_1..alpha_k of the polynomial part (constant term absorbed into the
// remainder).  Symbolic extraction when f is a sum of monomials plus rest;
// otherwise a Vandermonde fit at large probes, cross-checked on a disjoint
// probe set (relative drift > 1e-6 is an extraction failure).
std::vector<double> polynomial_part(const FunctionExpr& f, const DegreeProfile& profile);

// Expression implied by a profile (polynomial part plus x^c placeholder for
// the non-polynomial part); classify on it reproduces the class and degrees.
FunctionExpr reconstruct(const DegreeProfile& profile);

} // namespace basislab
