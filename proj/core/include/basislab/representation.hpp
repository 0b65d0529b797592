#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "basislab/classify.hpp"
#include "basislab/expr.hpp"
#include "basislab/hilbert_kamke.hpp"

namespace basislab {

// State of the carry recursion that turns N into simultaneous power-sum
// targets: X + Y = U + V with X = [U], Y = V + {U}; the residues E_j are
// forced into (0, delta0] step by step and the integers M_j become the
// Hilbert-Kamke targets delta0 * M_j.
struct CarryState {
    std::int64_t N = 0;
    int s = 1;
    int k = 1;            // polynomial degree
    double delta = 0.25;  // V = U^(1-delta)
    double U = 0.0, V = 0.0;
    std::int64_t X = 0;
    double Y = 0.0;
    std::vector<double> E;        // E_0..E_k, E_0 = 0, E_j in (0, delta0]
    std::vector<std::int64_t> M;  // M_1..M_k, all >= 1
    std::int64_t delta0 = 1;
};

// Scalar solve of N = s f(U + V) + s alpha_k V^k with V = U^(1-delta);
// bracketing bisection plus Newton polish on the increasing left side.
struct UVSolution {
    double U = 0.0;
    double V = 0.0;
    double residual = 0.0;  // value of the defining equation at the solution
};

UVSolution solve_UV(const FunctionExpr& f, const std::vector<double>& poly, std::int64_t N,
                    int s, double delta);

// Fills E_1..E_k and M_1..M_k.  The j-th step computes
// Q_j = s Y^j + (j f^(j-1)(X)/f^(j)(X)) E_{j-1} (the last step uses
// s (Y^k + V^k)) and splits Q_j = delta0 M_j + E_j with E_j in (0, delta0];
// exact multiples land on E_j = delta0.
CarryState build_MEj(const FunctionExpr& f, CarryState state);

// Deviation of delta0 M_j from 2^(-j/k) s^(1-j/k) (delta0 M_k)^(j/k), with
// the predicted error scale X Y^-2.
struct HKRatioReport {
    std::vector<double> deviation;  // |ratio - 1| for j = 1..k-1
    double error_scale = 0.0;       // X * Y^-2
    bool flagged = false;           // any deviation > 10 * error_scale
};

HKRatioReport hk_ratio_check(const CarryState& state);

// |f(X+Y) - sum_{j<=k} f^(j)(X)/j! Y^j|
double taylor_remainder_check(const FunctionExpr& f, std::int64_t X, double Y, int k);

struct RepresentationResult {
    std::int64_t X = 0;
    std::vector<std::int64_t> y;  // y_1..y_s, positive
    double sum_f = 0.0;           // sum f(X + y_i)
    double residual_real = 0.0;   // N - sum f(X + y_i)
    std::int64_t residual_int = 0;  // N - sum [f(X + y_i)], exact
    HKInstance hk_used;
};

enum class RepStatus { Ok, HKUnsolvable, HKBudget };

struct RepresentationOutcome {
    RepStatus status = RepStatus::Ok;
    std::optional<RepresentationResult> result;
    CarryState state;
    HKInstance hk_instance;
    HKRatioReport ratio_report;
    double taylor_remainder = 0.0;  // of the single expansion at (X, Y)
    double anchor_residual = 0.0;   // N - s f(X+Y) - s alpha_k V^k

    bool ok() const { return status == RepStatus::Ok; }
};

// Full pipeline.  Pass x_max = 0 for the default search cap
// ceil((2 delta0 M_k / s)^(1/k)) + 2.  Requires class I or III with a
// subpolynomial remainder.
RepresentationOutcome assemble(const FunctionExpr& f, const DegreeProfile& profile,
                               std::int64_t N, int s, double delta, std::int64_t x_max = 0,
                               std::uint64_t hk_node_budget = kDefaultHKNodeBudget);

// Smallest s <= s_max whose pipeline run succeeds on the pilot N.
std::optional<int> pilot_s(const FunctionExpr& f, const DegreeProfile& profile,
                           std::int64_t pilot_N, double delta, int s_max = 32);

} // namespace basislab
