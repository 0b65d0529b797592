#include "basislab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "basislab/errors.hpp"
#include "basislab/eval.hpp"
#include "basislab/exp_sums.hpp"
#include "basislab/jet.hpp"
#include "basislab/oscillatory.hpp"
#include "basislab/sequence.hpp"

namespace basislab {

namespace {

double dist_to_int(double x) {
    double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

std::complex<double> e_of(double x) {
    return {std::cos(2.0 * M_PI * x), std::sin(2.0 * M_PI * x)};
}

std::vector<std::int64_t> window_floor_values(const FunctionExpr& f, double lo, double hi) {
    std::int64_t first = static_cast<std::int64_t>(std::floor(lo)) + 1;
    std::int64_t last = static_cast<std::int64_t>(std::floor(hi));
    std::vector<std::int64_t> vals;
    vals.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, last - first + 1)));
    for (std::int64_t n = first; n <= last; ++n)
        vals.push_back(floor_safely(f, static_cast<double>(n)).value);
    return vals;
}

} // namespace

BoundCheck vdc_bound_check(const FunctionExpr& f, int k, double beta, double P, double P1) {
    if (k < 1) raise(ErrorKind::Range, "vdc_bound_check: k must be >= 1");
    if (!(P < P1)) raise(ErrorKind::Range, "vdc_bound_check: need P < P1");

    BoundCheck bc;
    bc.k = k;
    bc.beta = beta;
    bc.P = P;
    bc.P1 = P1;
    bc.terms = P1 - P;

    // sample the k-th derivative of beta f over the block
    constexpr int kProbes = 65;
    double mn = 0.0, mx = 0.0;
    int sign = 0;
    std::vector<double> deriv1;
    for (int i = 0; i < kProbes; ++i) {
        double x = P + (P1 - P) * i / (kProbes - 1);
        x = std::max(x, 1.0);
        auto jet = eval_jet(f, x, k);
        double g = beta * jet[k];
        if (g == 0.0) raise(ErrorKind::Domain, "vdc_bound_check: k-th derivative vanishes on the block");
        int s = g > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign)
            raise(ErrorKind::Domain, "vdc_bound_check: k-th derivative changes sign on the block");
        double a = std::abs(g);
        mn = i == 0 ? a : std::min(mn, a);
        mx = i == 0 ? a : std::max(mx, a);
        if (k == 1) deriv1.push_back(g);
    }
    bc.lambda = mn;
    bc.h = mx / mn;

    ExpSum w = exp_sum(f, beta, P, P1, SumVariant::T);
    bc.lhs = std::abs(w.value);

    const double N = bc.terms;
    if (k >= 2) {
        const double K = std::ldexp(1.0, k);  // 2^k
        bc.rhs_formula = bc.h * N *
                         (std::pow(bc.lambda, 1.0 / (K - 2.0)) + std::pow(N, -2.0 / K) +
                          std::pow(std::pow(N, k) * bc.lambda, -2.0 / K));
    } else {
        // Kuzmin-Landau: monotone phase derivative bounded away from integers
        for (std::size_t i = 1; i < deriv1.size(); ++i)
            if ((deriv1[i] - deriv1[i - 1]) * (deriv1[1] - deriv1[0]) < 0.0)
                raise(ErrorKind::Domain, "vdc_bound_check: phase derivative not monotone (k = 1)");
        double min_dist = 1.0;
        for (double g : deriv1) min_dist = std::min(min_dist, dist_to_int(g));
        if (min_dist <= 0.0)
            raise(ErrorKind::Domain, "vdc_bound_check: phase derivative hits an integer (k = 1)");
        bc.rhs_formula = 1.0 / min_dist;
    }
    bc.ratio = bc.lhs / bc.rhs_formula;
    return bc;
}

FourierExpansionCheck fourier_expansion_check(double x, double alpha, int K) {
    if (K < 2) raise(ErrorKind::Range, "fourier_expansion_check: K must be >= 2");
    if (x == std::floor(x) || alpha == std::floor(alpha))
        raise(ErrorKind::Range, "fourier_expansion_check: x and alpha must be non-integer");

    FourierExpansionCheck out;
    out.K = K;
    double fx = x - std::floor(x);
    out.lhs = e_of(-alpha * fx);

    // c(alpha) = (1 - e(-alpha)) / (2 pi i)
    std::complex<double> c = (std::complex<double>(1.0, 0.0) - e_of(-alpha)) /
                             std::complex<double>(0.0, 2.0 * M_PI);
    KahanComplex acc;
    for (int k = -K; k <= K; ++k) {
        std::complex<double> term = e_of(k * fx) / (static_cast<double>(k) + alpha);
        acc.add(term.real(), term.imag());
    }
    out.truncated = c * acc.value();
    out.residual = std::abs(out.lhs - out.truncated);
    out.phi = 1.0 / (1.0 + K * dist_to_int(x));
    out.bound = out.phi * std::log(static_cast<double>(K));
    return out;
}

PhiDecay phi_fourier_decay(int K) {
    if (K < 2) raise(ErrorKind::Range, "phi_fourier_decay: K must be >= 2");
    const int n = 4 * K;
    std::vector<double> phi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = static_cast<double>(i) / n;
        phi[static_cast<std::size_t>(i)] = 1.0 / (1.0 + K * dist_to_int(x));
    }
    PhiDecay out;
    const double logK = std::log(static_cast<double>(K));
    for (int k = 0; k <= 2 * K; ++k) {
        double re = 0.0, im = 0.0;
        for (int i = 0; i < n; ++i) {
            double th = -2.0 * M_PI * k * i / static_cast<double>(n);
            re += phi[static_cast<std::size_t>(i)] * std::cos(th);
            im += phi[static_cast<std::size_t>(i)] * std::sin(th);
        }
        double bk = std::hypot(re, im) / n;
        if (k == 0) out.b0 = bk;
        double envelope = K * logK / (static_cast<double>(K) * K + static_cast<double>(k) * k);
        out.fitted_constant = std::max(out.fitted_constant, bk / envelope);
    }
    return out;
}

double sigma_for_profile(const DegreeProfile& profile) {
    if (profile.cls == FnClass::II) {
        double d = profile.degree();
        return std::ldexp(1.0, -(static_cast<int>(std::ceil(d + 1.0)) + 1));
    }
    double c = profile.c;
    return std::ldexp(1.0, -(profile.d + 2)) * std::min(c, 1.0);
}

MinorArcSup minor_arc_sup(const FunctionExpr& f, const ArcParams& params, double sigma,
                          int samples) {
    if (samples < 1000) raise(ErrorKind::Range, "minor_arc_sup: need at least 1e3 samples");

    auto values = window_floor_values(f, params.X0, params.X1);

    std::set<double> alphas;
    alphas.insert(params.omega);
    alphas.insert(0.5);
    // reduced rationals a/q, q <= 20: where |S| peaks
    for (int q = 1; q <= 20; ++q)
        for (int a = 1; a <= q / 2; ++a) {
            if (std::gcd(a, q) != 1) continue;
            double r = static_cast<double>(a) / q;
            if (r >= params.omega && r <= 0.5) alphas.insert(r);
        }
    int n_log = samples / 2;
    int n_lin = samples - n_log;
    double hi_log = std::min(0.1, 0.5);
    for (int i = 0; i < n_log; ++i) {
        double t = static_cast<double>(i) / std::max(1, n_log - 1);
        alphas.insert(params.omega * std::pow(hi_log / params.omega, t));
    }
    for (int i = 0; i < n_lin; ++i) {
        double t = static_cast<double>(i) / std::max(1, n_lin - 1);
        alphas.insert(params.omega + (0.5 - params.omega) * t);
    }

    MinorArcSup out;
    out.sigma = sigma;
    out.terms = static_cast<std::int64_t>(values.size());
    out.samples.reserve(alphas.size());
    for (double a : alphas) {
        double mag = std::abs(exp_sum_over_values(values, a));
        out.samples.emplace_back(a, mag);
        if (mag > out.max_abs) {
            out.max_abs = mag;
            out.argmax_alpha = a;
        }
    }
    out.implied_exponent = std::log(std::max(out.max_abs, 1.0)) / std::log(params.X);
    return out;
}

MajorArcReport major_arc_report(const FunctionExpr& f, const ArcParams& params, int s,
                                int grid_per_side) {
    if (s < 3) raise(ErrorKind::Range, "major_arc_report: s must be >= 3");

    auto values = window_floor_values(f, params.X0, params.X1);

    MajorArcReport rep;
    rep.predicted_scale = std::pow(params.X, static_cast<double>(s) - params.d);
    rep.s_minus_t_allowance = params.omega * params.X1;

    const int g = grid_per_side;
    const double step = params.omega / g;
    KahanComplex integral;
    for (int j = -g; j <= g; ++j) {
        double alpha = j * step;
        std::complex<double> S = exp_sum_over_values(values, alpha);
        std::complex<double> T = exp_sum(f, alpha, params.X0, params.X1, SumVariant::T).value;
        std::complex<double> I = integral_I(f, alpha, params.X0, params.X1);
        rep.max_s_minus_t = std::max(rep.max_s_minus_t, std::abs(S - T));
        rep.max_t_minus_i = std::max(rep.max_t_minus_i, std::abs(T - I));
        double i_env = std::abs(I) * (1.0 + std::pow(params.X, params.d) * std::abs(alpha)) / params.X;
        rep.fitted_i_constant = std::max(rep.fitted_i_constant, i_env);

        std::complex<double> p = 1.0;
        for (int t = 0; t < s; ++t) p *= S;
        std::complex<double> term =
            p * e_of(-alpha * static_cast<double>(params.N));
        // trapezoid: half weight at the two endpoints
        double w = (j == -g || j == g) ? 0.5 * step : step;
        integral.add(w * term.real(), w * term.imag());
    }
    rep.integral = integral.value();
    rep.positive_real_part = rep.integral.real() > 0.0;
    return rep;
}

} // namespace basislab
