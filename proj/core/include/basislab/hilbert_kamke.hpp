#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace basislab {

using BigInt = boost::multiprecision::cpp_int;

// Simultaneous Waring system: x_1^j + ... + x_s^j = N_j for j = 1..k.
struct HKInstance {
    int k = 1;
    int s = 1;
    std::vector<std::int64_t> targets;  // N_1..N_k
};

// det of the k x k matrix with entry (row r, col c) = c^r; equals the
// product 1! 2! ... k!.  Computed both ways and cross-checked.
BigInt delta0(int k);

// Same matrix with column j replaced by the targets.
BigInt delta_j(int k, int j, const std::vector<std::int64_t>& targets);

// Solvability screen: the ratio window N_j vs N_k^(j/k) and s^(1-j/k),
// and the congruences delta_j = 0 mod delta0.
struct HKConditions {
    std::vector<double> ratios_low;   // N_j / N_k^(j/k), j = 1..k-1
    std::vector<double> ratios_high;  // N_j / (s^(1-j/k) N_k^(j/k)), j = 1..k-1
    std::vector<bool> congruences_ok; // delta_j = 0 mod delta0, j = 1..k
    BigInt delta0_value;
    std::vector<BigInt> delta_values;
    bool plausible = false;  // all ratios_low > 1, ratios_high < 1, congruences hold
};

HKConditions check_conditions(const HKInstance& inst);

struct HKSolution {
    std::vector<std::int64_t> x;  // non-increasing, positive
};

enum class HKStatus { Found, None, BudgetExceeded };

struct HKSolveOutcome {
    HKStatus status = HKStatus::None;
    std::optional<HKSolution> solution;
    std::uint64_t nodes = 0;

    bool found() const { return status == HKStatus::Found; }
};

inline constexpr std::uint64_t kDefaultHKNodeBudget = 50'000'000;

// Depth-first search over non-increasing x_1 >= ... >= x_s >= 1, descending
// so the first hit is the lexicographically largest solution.  Prunes on
// power-sum feasibility at every depth; for k = 2 the last two unknowns are
// closed-form.  Budget exhaustion is reported as its own status, distinct
// from a proven "none".
HKSolveOutcome solve_bruteforce(const HKInstance& inst, std::int64_t x_max,
                                std::uint64_t node_budget = kDefaultHKNodeBudget);

} // namespace basislab
