#include "basislab/representation.hpp"

#include <cmath>

#include "basislab/dd.hpp"
#include "basislab/errors.hpp"
#include "basislab/eval.hpp"
#include "basislab/jet.hpp"
#include "basislab/sequence.hpp"

namespace basislab {

namespace {

double g_of_U(const FunctionExpr& f, double alpha_k, int k, int s, double delta, double U,
              std::int64_t N) {
    double V = std::pow(U, 1.0 - delta);
    return s * eval(f, U + V) + s * alpha_k * std::pow(V, k) - static_cast<double>(N);
}

double g_prime(const FunctionExpr& f, double alpha_k, int k, int s, double delta, double U) {
    double V = std::pow(U, 1.0 - delta);
    double fp = eval_jet(f, U + V, 1)[1];
    double dV = (1.0 - delta) * std::pow(U, -delta);
    return s * fp * (1.0 + dV) + s * alpha_k * k * std::pow(V, k - 1) * dV;
}

std::int64_t delta0_int64(int k) {
    BigInt d = delta0(k);
    if (d > BigInt(INT64_MAX))
        raise(ErrorKind::Capacity, "representation: delta0 exceeds int64 for this degree");
    return static_cast<std::int64_t>(d);
}

} // namespace

UVSolution solve_UV(const FunctionExpr& f, const std::vector<double>& poly, std::int64_t N,
                    int s, double delta) {
    if (poly.empty()) raise(ErrorKind::Range, "solve_UV: empty polynomial part");
    if (!(delta > 0.0 && delta < 0.5))
        raise(ErrorKind::Range, "solve_UV: delta must lie in (0, 1/2)");
    const int k = static_cast<int>(poly.size());
    const double alpha_k = poly.back();
    if (alpha_k <= 0.0) raise(ErrorKind::Range, "solve_UV: leading coefficient must be positive");

    double a = 1.0;
    double ga = g_of_U(f, alpha_k, k, s, delta, a, N);
    if (ga > 0.0) raise(ErrorKind::Range, "solve_UV: N too small, g(1) already positive");
    double b = 2.0;
    double gb = g_of_U(f, alpha_k, k, s, delta, b, N);
    int guard = 0;
    while (gb < 0.0) {
        a = b;
        ga = gb;
        b *= 2.0;
        if (++guard > 512) raise(ErrorKind::Range, "solve_UV: failed to bracket the root");
        gb = g_of_U(f, alpha_k, k, s, delta, b, N);
    }
    if (!(g_prime(f, alpha_k, k, s, delta, a) > 0.0) ||
        !(g_prime(f, alpha_k, k, s, delta, b) > 0.0))
        raise(ErrorKind::Domain, "solve_UV: g not increasing on the bracket");
    (void)ga;
    for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        double mid = 0.5 * (a + b);
        if (g_of_U(f, alpha_k, k, s, delta, mid, N) < 0.0)
            a = mid;
        else
            b = mid;
    }
    double U = 0.5 * (a + b);
    for (int it = 0; it < 4; ++it) {
        double g = g_of_U(f, alpha_k, k, s, delta, U, N);
        double dg = g_prime(f, alpha_k, k, s, delta, U);
        if (dg <= 0.0) break;
        double nu = U - g / dg;
        if (nu >= 1.0 && std::isfinite(nu)) U = nu;
    }
    UVSolution sol;
    sol.U = U;
    sol.V = std::pow(U, 1.0 - delta);
    sol.residual = g_of_U(f, alpha_k, k, s, delta, U, N);
    if (std::abs(sol.residual) > 1e-6 * static_cast<double>(N))
        raise(ErrorKind::Internal, "solve_UV: solve residual above 1e-6 N");
    return sol;
}

CarryState build_MEj(const FunctionExpr& f, CarryState st) {
    const int k = st.k;
    const double D = static_cast<double>(st.delta0);
    Jet jet = eval_jet(f, static_cast<double>(st.X), k);
    for (int j = 1; j <= k; ++j)
        if (jet[j] == 0.0)
            raise(ErrorKind::Domain, "build_MEj: f^(j)(X) vanishes");

    st.E.assign(static_cast<std::size_t>(k) + 1, 0.0);
    st.M.assign(static_cast<std::size_t>(k), 0);
    for (int j = 1; j <= k; ++j) {
        double carry_ratio = j * jet[j - 1] / jet[j];
        double q = st.s * std::pow(st.Y, j) + carry_ratio * st.E[static_cast<std::size_t>(j - 1)];
        if (j == k) q += st.s * std::pow(st.V, k);
        if (!(q > 0.0) || q > 9e18)
            raise(ErrorKind::Range, "build_MEj: carry quantity out of range");
        auto m = static_cast<std::int64_t>(std::floor(q / D));
        double e = q - D * static_cast<double>(m);
        while (e > D) { m += 1; e -= D; }
        while (e <= 0.0) { m -= 1; e += D; }
        if (m < 1)
            raise(ErrorKind::Range, "build_MEj: M_j < 1, N too small for this (s, delta)");
        st.M[static_cast<std::size_t>(j - 1)] = m;
        st.E[static_cast<std::size_t>(j)] = e;
    }
    return st;
}

HKRatioReport hk_ratio_check(const CarryState& st) {
    HKRatioReport rep;
    rep.error_scale = static_cast<double>(st.X) / (st.Y * st.Y);
    const int k = st.k;
    const double D = static_cast<double>(st.delta0);
    const double tk = D * static_cast<double>(st.M[static_cast<std::size_t>(k - 1)]);
    for (int j = 1; j < k; ++j) {
        double tj = D * static_cast<double>(st.M[static_cast<std::size_t>(j - 1)]);
        double jk = static_cast<double>(j) / k;
        double predicted = std::pow(2.0, -jk) * std::pow(static_cast<double>(st.s), 1.0 - jk) *
                           std::pow(tk, jk);
        double dev = std::abs(tj / predicted - 1.0);
        rep.deviation.push_back(dev);
        if (dev > 10.0 * rep.error_scale) rep.flagged = true;
    }
    return rep;
}

double taylor_remainder_check(const FunctionExpr& f, std::int64_t X, double Y, int k) {
    Jet jet = eval_jet(f, static_cast<double>(X), k);
    double taylor = jet[0];
    double fact = 1.0;
    double ypow = 1.0;
    for (int j = 1; j <= k; ++j) {
        fact *= j;
        ypow *= Y;
        taylor += jet[j] / fact * ypow;
    }
    double direct = eval(f, static_cast<double>(X) + Y);
    return std::abs(direct - taylor);
}

RepresentationOutcome assemble(const FunctionExpr& f, const DegreeProfile& profile,
                               std::int64_t N, int s, double delta, std::int64_t x_max,
                               std::uint64_t hk_node_budget) {
    if (profile.cls == FnClass::II)
        raise(ErrorKind::Range, "assemble: class II functions are out of scope here");
    if (!profile.subpolynomial_remainder)
        raise(ErrorKind::Range, "assemble: the remainder must be subpolynomial");
    if (profile.poly.empty() || profile.poly.back() <= 0.0)
        raise(ErrorKind::Range, "assemble: need a positive leading coefficient");

    const int k = profile.d;
    RepresentationOutcome out;
    out.state.N = N;
    out.state.s = s;
    out.state.k = k;
    out.state.delta = delta;
    out.state.delta0 = delta0_int64(k);

    UVSolution uv = solve_UV(f, profile.poly, N, s, delta);
    out.state.U = uv.U;
    out.state.V = uv.V;
    out.state.X = static_cast<std::int64_t>(std::floor(uv.U));
    out.state.Y = uv.V + (uv.U - std::floor(uv.U));

    out.state = build_MEj(f, out.state);
    out.ratio_report = hk_ratio_check(out.state);
    out.taylor_remainder =
        taylor_remainder_check(f, out.state.X, out.state.Y, k);
    out.anchor_residual = static_cast<double>(N) - s * eval(f, static_cast<double>(out.state.X) + out.state.Y) -
                          s * profile.poly.back() * std::pow(uv.V, k);

    HKInstance inst;
    inst.k = k;
    inst.s = s;
    for (int j = 1; j <= k; ++j) {
        __int128 t = static_cast<__int128>(out.state.delta0) *
                     out.state.M[static_cast<std::size_t>(j - 1)];
        if (t > static_cast<__int128>(INT64_MAX))
            raise(ErrorKind::Capacity, "assemble: HK target exceeds int64");
        inst.targets.push_back(static_cast<std::int64_t>(t));
    }
    out.hk_instance = inst;

    if (x_max <= 0) {
        double tk = static_cast<double>(inst.targets.back());
        x_max = static_cast<std::int64_t>(
                    std::ceil(std::pow(2.0 * tk / s, 1.0 / k))) + 2;
    }
    HKSolveOutcome hk = solve_bruteforce(inst, x_max, hk_node_budget);
    if (hk.status == HKStatus::BudgetExceeded) {
        out.status = RepStatus::HKBudget;
        return out;
    }
    if (hk.status == HKStatus::None) {
        out.status = RepStatus::HKUnsolvable;
        return out;
    }

    RepresentationResult res;
    res.X = out.state.X;
    res.y = hk.solution->x;
    res.hk_used = inst;
    Dd sum{0.0, 0.0};
    __int128 sum_int = 0;
    for (auto yi : res.y) {
        double arg = static_cast<double>(res.X + yi);
        sum = dd_add(sum, eval_dd(f, arg));
        sum_int += floor_safely(f, arg).value;
    }
    res.sum_f = sum.to_double();
    res.residual_real = dd_sub(dd_from_int64(N), sum).to_double();
    res.residual_int = static_cast<std::int64_t>(static_cast<__int128>(N) - sum_int);
    out.result = std::move(res);
    out.status = RepStatus::Ok;
    return out;
}

std::optional<int> pilot_s(const FunctionExpr& f, const DegreeProfile& profile,
                           std::int64_t pilot_N, double delta, int s_max) {
    for (int s = std::max(3, profile.d + 1); s <= s_max; ++s) {
        try {
            auto outcome = assemble(f, profile, pilot_N, s, delta);
            if (outcome.ok()) return s;
        } catch (const Error&) {
            // N too small for this s, or another structural failure: try larger s
        }
    }
    return std::nullopt;
}

} // namespace basislab
