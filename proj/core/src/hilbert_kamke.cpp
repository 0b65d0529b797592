#include "basislab/hilbert_kamke.hpp"

#include <algorithm>
#include <cmath>

#include "basislab/errors.hpp"

namespace basislab {

namespace {

// Fraction-free (Bareiss) elimination; every intermediate entry is a minor of
// the input, and the divisions are exact.
BigInt bareiss_det(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t p = 0; p < n; ++p) {
        if (m[p][p] == 0) {
            std::size_t swap_row = p;
            for (std::size_t r = p + 1; r < n; ++r)
                if (m[r][p] != 0) { swap_row = r; break; }
            if (swap_row == p) return 0;
            std::swap(m[p], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t r = p + 1; r < n; ++r) {
            for (std::size_t c = p + 1; c < n; ++c)
                m[r][c] = (m[r][c] * m[p][p] - m[r][p] * m[p][c]) / prev;
            m[r][p] = 0;
        }
        prev = m[p][p];
    }
    return sign * m[n - 1][n - 1];
}

std::vector<std::vector<BigInt>> power_matrix(int k) {
    std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) {
        auto& row = m[static_cast<std::size_t>(r)];
        row.resize(static_cast<std::size_t>(k));
        for (int c = 0; c < k; ++c) {
            BigInt v = 1;
            for (int e = 0; e <= r; ++e) v *= (c + 1);
            row[static_cast<std::size_t>(c)] = v;
        }
    }
    return m;
}

std::int64_t isqrt64(std::int64_t v) {
    if (v < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

} // namespace

BigInt delta0(int k) {
    if (k < 1 || k > 10) raise(ErrorKind::Range, "delta0: k must be in [1, 10]");
    BigInt det = bareiss_det(power_matrix(k));
    BigInt prod = 1;
    BigInt fact = 1;
    for (int j = 1; j <= k; ++j) {
        fact *= j;
        prod *= fact;
    }
    if (det != prod)
        raise(ErrorKind::Internal, "delta0: determinant disagrees with the factorial product");
    return det;
}

BigInt delta_j(int k, int j, const std::vector<std::int64_t>& targets) {
    if (k < 1 || k > 10) raise(ErrorKind::Range, "delta_j: k must be in [1, 10]");
    if (j < 1 || j > k) raise(ErrorKind::Range, "delta_j: j must be in [1, k]");
    if (static_cast<int>(targets.size()) != k)
        raise(ErrorKind::Range, "delta_j: targets must have length k");
    auto m = power_matrix(k);
    for (int r = 0; r < k; ++r)
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j - 1)] =
            targets[static_cast<std::size_t>(r)];
    return bareiss_det(std::move(m));
}

HKConditions check_conditions(const HKInstance& inst) {
    if (inst.k < 1 || inst.s < 1) raise(ErrorKind::Range, "check_conditions: k, s must be >= 1");
    for (auto t : inst.targets)
        if (t < 1) raise(ErrorKind::Range, "check_conditions: targets must be >= 1");

    HKConditions cond;
    cond.delta0_value = delta0(inst.k);
    const int k = inst.k;
    const double nk = static_cast<double>(inst.targets[static_cast<std::size_t>(k - 1)]);
    for (int j = 1; j < k; ++j) {
        double nj = static_cast<double>(inst.targets[static_cast<std::size_t>(j - 1)]);
        double nk_pow = std::pow(nk, static_cast<double>(j) / k);
        double s_pow = std::pow(static_cast<double>(inst.s), 1.0 - static_cast<double>(j) / k);
        cond.ratios_low.push_back(nj / nk_pow);
        cond.ratios_high.push_back(nj / (s_pow * nk_pow));
    }
    bool all = true;
    for (int j = 1; j <= k; ++j) {
        BigInt dj = delta_j(k, j, inst.targets);
        cond.delta_values.push_back(dj);
        bool ok = dj % cond.delta0_value == 0;
        cond.congruences_ok.push_back(ok);
        all = all && ok;
    }
    for (std::size_t j = 0; j + 1 < static_cast<std::size_t>(k); ++j)
        all = all && cond.ratios_low[j] > 1.0 && cond.ratios_high[j] < 1.0;
    cond.plausible = all;
    return cond;
}

namespace {

struct Dfs {
    int k, s;
    std::int64_t x_max;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool budget_hit = false;
    std::vector<std::int64_t> chosen;
    std::vector<std::int64_t> rem;  // rem[j-1] = remaining j-th power target

    bool feasible(int m, std::int64_t bound) const {
        const std::int64_t r1 = rem[0];
        if (r1 < m || r1 > m * bound) return false;
        const double avg = static_cast<double>(r1) / m;
        for (int j = 2; j <= k; ++j) {
            const std::int64_t rj = rem[static_cast<std::size_t>(j - 1)];
            if (rj < m) return false;
            // convexity lower bound: sum x^j >= m (r1/m)^j
            if (static_cast<double>(rj) < m * std::pow(avg, j) * (1.0 - 1e-12) - 1.0) return false;
            // extremal upper bound: q values at `bound`, one partial, rest at 1
            __int128 maxs;
            if (bound <= 1) {
                maxs = m;
            } else {
                std::int64_t q = std::min<std::int64_t>(m, (r1 - m) / (bound - 1));
                std::int64_t rest = m - q;
                std::int64_t partial = r1 - q * bound - (rest > 0 ? rest - 1 : 0);
                __int128 bp = 1, pp = 1;
                for (int e = 0; e < j; ++e) bp *= bound;
                for (int e = 0; e < j; ++e) pp *= partial > 0 ? partial : 0;
                maxs = static_cast<__int128>(q) * bp + (rest > 0 ? pp : 0) + (rest > 0 ? rest - 1 : 0);
            }
            if (static_cast<__int128>(rj) > maxs) return false;
        }
        return true;
    }

    bool closed_form_pair(std::int64_t bound) {
        // x + y = r1, x^2 + y^2 = r2, bound >= x >= y >= 1
        const std::int64_t r1 = rem[0], r2 = rem[1];
        const __int128 disc128 = 2 * static_cast<__int128>(r2) - static_cast<__int128>(r1) * r1;
        if (disc128 < 0 || disc128 > static_cast<__int128>(INT64_MAX)) return false;
        const auto disc = static_cast<std::int64_t>(disc128);  // (x - y)^2
        std::int64_t d = isqrt64(disc);
        if (d < 0 || d * d != disc) return false;
        if ((r1 + d) % 2 != 0) return false;
        std::int64_t x = (r1 + d) / 2, y = r1 - x;
        if (y < 1 || x > bound) return false;
        chosen.push_back(x);
        chosen.push_back(y);
        return true;
    }

    bool search(int depth, std::int64_t bound) {
        if (++nodes > budget) {
            budget_hit = true;
            return false;
        }
        const int m = s - depth;
        if (m == 0) {
            for (int j = 1; j <= k; ++j)
                if (rem[static_cast<std::size_t>(j - 1)] != 0) return false;
            return true;
        }
        if (!feasible(m, bound)) return false;
        if (m == 1) {
            std::int64_t x = rem[0];
            if (x < 1 || x > bound) return false;
            __int128 p = 1;
            for (int j = 1; j <= k; ++j) {
                p = 1;
                for (int e = 0; e < j; ++e) p *= x;
                if (p != rem[static_cast<std::size_t>(j - 1)]) return false;
            }
            chosen.push_back(x);
            return true;
        }
        if (m == 2 && k == 2) return closed_form_pair(bound);

        std::int64_t hi = std::min<std::int64_t>(bound, rem[0] - (m - 1));
        std::int64_t lo = (rem[0] + m - 1) / m;  // largest element >= ceil(average)
        for (std::int64_t x = hi; x >= lo; --x) {
            __int128 p = 1;
            bool fits = true;
            for (int j = 1; j <= k; ++j) {
                p *= x;
                if (p > static_cast<__int128>(rem[static_cast<std::size_t>(j - 1)])) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;
            std::int64_t pw = 1;
            for (int j = 1; j <= k; ++j) {
                pw *= x;
                rem[static_cast<std::size_t>(j - 1)] -= pw;
            }
            chosen.push_back(x);
            if (search(depth + 1, x)) return true;
            if (budget_hit) return false;
            chosen.pop_back();
            pw = 1;
            for (int j = 1; j <= k; ++j) {
                pw *= x;
                rem[static_cast<std::size_t>(j - 1)] += pw;
            }
        }
        return false;
    }
};

} // namespace

HKSolveOutcome solve_bruteforce(const HKInstance& inst, std::int64_t x_max,
                                std::uint64_t node_budget) {
    if (inst.k < 1 || inst.k > 10) raise(ErrorKind::Range, "solve_bruteforce: k must be in [1, 10]");
    if (inst.s < 1) raise(ErrorKind::Range, "solve_bruteforce: s must be >= 1");
    if (static_cast<int>(inst.targets.size()) != inst.k)
        raise(ErrorKind::Range, "solve_bruteforce: targets must have length k");
    if (x_max < 1) raise(ErrorKind::Range, "solve_bruteforce: x_max must be >= 1");
    // keep s * x_max^k inside int64
    __int128 top = 1;
    for (int j = 0; j < inst.k; ++j) top *= x_max;
    if (top * (inst.s + 1) > static_cast<__int128>(INT64_MAX))
        raise(ErrorKind::Capacity, "solve_bruteforce: s * x_max^k exceeds the integer width");

    Dfs dfs;
    dfs.k = inst.k;
    dfs.s = inst.s;
    dfs.x_max = x_max;
    dfs.budget = node_budget;
    dfs.rem.assign(inst.targets.begin(), inst.targets.end());

    HKSolveOutcome out;
    bool found = dfs.search(0, x_max);
    out.nodes = dfs.nodes;
    if (dfs.budget_hit) {
        out.status = HKStatus::BudgetExceeded;
        return out;
    }
    if (!found) {
        out.status = HKStatus::None;
        return out;
    }
    // exact re-verification of every power-sum equation
    for (int j = 1; j <= inst.k; ++j) {
        __int128 total = 0;
        for (auto x : dfs.chosen) {
            __int128 p = 1;
            for (int e = 0; e < j; ++e) p *= x;
            total += p;
        }
        if (total != inst.targets[static_cast<std::size_t>(j - 1)])
            raise(ErrorKind::Internal, "solve_bruteforce: solution fails re-verification");
    }
    out.status = HKStatus::Found;
    out.solution = HKSolution{std::move(dfs.chosen)};
    return out;
}

} // namespace basislab
