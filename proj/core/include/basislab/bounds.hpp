#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "basislab/arcs.hpp"
#include "basislab/classify.hpp"
#include "basislab/expr.hpp"

namespace basislab {

// One empirical bound comparison: measured |sum| against the formula's
// right-hand side with constant 1; the ratio is the fitted constant.
struct BoundCheck {
    double lhs = 0.0;
    double rhs_formula = 0.0;
    double ratio = 0.0;
    int k = 0;
    double terms = 0.0;   // N in the bound
    double lambda = 0.0;  // min |beta f^(k)|
    double h = 1.0;       // max/min ratio of |beta f^(k)|
    double beta = 0.0;
    double P = 0.0, P1 = 0.0;
};

// Derivative-sandwich exponential sum bound over a block (P, P1]:
// for k >= 2, |W| <= h N (lambda^(1/(K-2)) + N^(-2/K) + (N^k lambda)^(-2/K))
// with K = 2^k; for k = 1 the Kuzmin-Landau form 1/min||beta f'|| instead.
// The k-th derivative of beta*f must keep one sign on the block.
BoundCheck vdc_bound_check(const FunctionExpr& f, int k, double beta, double P, double P1);

// Truncated expansion of e(-alpha {x}) against c(alpha) sum_{|k|<=K}
// e(kx)/(k+alpha), c(alpha) = (1 - e(-alpha))/(2 pi i); the residual is
// compared with Phi(x;K) log K, Phi(x;K) = 1/(1 + K ||x||).
struct FourierExpansionCheck {
    std::complex<double> lhs;
    std::complex<double> truncated;
    double residual = 0.0;
    double bound = 0.0;  // Phi(x;K) * log K
    double phi = 0.0;
    int K = 0;
};

FourierExpansionCheck fourier_expansion_check(double x, double alpha, int K);

// Discrete Fourier coefficients of Phi(.;K) on a 4K grid: b_0 and the fitted
// constant in |b_k| <= C K log K / (K^2 + k^2).
struct PhiDecay {
    double b0 = 0.0;
    double fitted_constant = 0.0;
};

PhiDecay phi_fourier_decay(int K);

// Sampled sup of |S(alpha)| over the minor arcs omega <= |alpha| <= 1/2:
// log-spaced points near omega, a linear sweep, and every reduced rational
// a/q with q <= 20 in range (where the peaks live).
struct MinorArcSup {
    double max_abs = 0.0;
    double argmax_alpha = 0.0;
    double implied_exponent = 0.0;  // log max|S| / log X
    double sigma = 0.0;             // exponent the bound predicts
    std::int64_t terms = 0;
    std::vector<std::pair<double, double>> samples;  // (alpha, |S|)
};

MinorArcSup minor_arc_sup(const FunctionExpr& f, const ArcParams& params, double sigma,
                          int samples);

// sigma = 2^(-d-2) min(c, 1) for class III, 2^(-ceil(d+1)-1) for class II.
double sigma_for_profile(const DegreeProfile& profile);

// Major-arc diagnostics: the integral of S^s e(-alpha N) over |alpha| <=
// omega, and the measured sizes of the S-T, T-I and I-decay approximations.
struct MajorArcReport {
    std::complex<double> integral;
    double predicted_scale = 0.0;     // X^(s-d)
    double max_s_minus_t = 0.0;       // max |S - T| over the sampled arc
    double s_minus_t_allowance = 0.0; // omega X1
    double max_t_minus_i = 0.0;       // max |T - I|
    double fitted_i_constant = 0.0;   // max |I| (1 + X^d |alpha|) / X
    bool positive_real_part = false;
};

MajorArcReport major_arc_report(const FunctionExpr& f, const ArcParams& params, int s,
                                int grid_per_side = 1024);

} // namespace basislab
