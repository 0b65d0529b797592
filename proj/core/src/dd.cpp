#include "basislab/dd.hpp"

#include <array>
#include <cstdlib>

#include "basislab/errors.hpp"

namespace basislab {

namespace {

// hi parts are exact constants; lo parts extend them to ~32 digits.
const Dd kPi{3.141592653589793116e+00, 1.224646799147353207e-16};
const Dd kLn2{6.931471805599452862e-01, 2.319046813846299558e-17};
const Dd kEulerGamma{5.772156649015328655e-01, -4.942915152430644868e-18};

// B_{2n}/(2n(2n-1)) as exact rationals, n = 1..15, for the Stirling tail.
struct Rational { long long num; long long den; };
constexpr std::array<Rational, 15> kStirlingCoef = {{
    {1LL, 12LL},                     // B2/(2*1)
    {-1LL, 360LL},                   // B4/(4*3)
    {1LL, 1260LL},                   // B6/(6*5)
    {-1LL, 1680LL},                  // B8/(8*7)
    {1LL, 1188LL},                   // B10/(10*9)
    {-691LL, 360360LL},              // B12/(12*11)
    {1LL, 156LL},                    // B14/(14*13)
    {-3617LL, 122400LL},             // B16/(16*15)
    {43867LL, 244188LL},             // B18/(18*17)
    {-174611LL, 125400LL},           // B20/(20*19)
    {77683LL, 5796LL},               // B22/(22*21)
    {-236364091LL, 1506960LL},       // B24/(24*23)
    {657931LL, 300LL},               // B26/(26*25)
    {-3392780147LL, 93960LL},        // B28/(28*27)
    {1723168255201LL, 2492028LL},    // B30/(30*29)
}};

} // namespace

Dd dd_pi() { return kPi; }
Dd dd_ln2() { return kLn2; }
Dd dd_euler_gamma() { return kEulerGamma; }

Dd dd_floor(Dd a) {
    double f = std::floor(a.hi);
    if (f != a.hi) return {f, 0.0};
    // hi is integral; lo decides whether we are just below it
    double g = std::floor(a.lo);
    return dd_detail::quick_two_sum(f, g);
}

Dd dd_frac(Dd a) {
    Dd f = dd_sub(a, dd_floor(a));
    // guard against rounding to exactly 1
    if (f.hi >= 1.0) f = dd_sub(f, 1.0);
    if (f.hi < 0.0) f = dd_add(f, 1.0);
    return f;
}

std::int64_t dd_to_int64_exact(Dd a) {
    if (std::abs(a.hi) >= 4.6e18)
        raise(ErrorKind::Range, "dd_to_int64_exact: value exceeds int64 range");
    auto hi = static_cast<std::int64_t>(a.hi);
    auto lo = static_cast<std::int64_t>(a.lo);
    if (static_cast<double>(hi) != a.hi || static_cast<double>(lo) != a.lo)
        raise(ErrorKind::Internal, "dd_to_int64_exact: value not integral");
    return hi + lo;
}

Dd dd_exp(Dd a) {
    if (a.hi > 700.0) raise(ErrorKind::Domain, "dd_exp: overflow");
    if (a.hi < -746.0) return {0.0, 0.0};
    // a = k*ln2 + r, |r| <= ln2/2, then exp(r) by Taylor
    double k = std::round(a.hi / kLn2.hi);
    Dd r = dd_sub(a, dd_mul(kLn2, k));
    Dd sum{1.0, 0.0};
    Dd term{1.0, 0.0};
    for (int n = 1; n <= 24; ++n) {
        term = dd_mul(term, r);
        term = dd_div(term, Dd(static_cast<double>(n)));
        sum = dd_add(sum, term);
        if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
    }
    return dd_mul(sum, std::ldexp(1.0, static_cast<int>(k)));
}

Dd dd_log(Dd a) {
    if (a.hi <= 0.0) raise(ErrorKind::Domain, "dd_log: argument <= 0");
    // Newton on exp(y) = a from the double estimate
    Dd y{std::log(a.hi), 0.0};
    for (int i = 0; i < 2; ++i) {
        Dd e = dd_exp(y);
        y = dd_add(y, dd_sub(dd_div(a, e), Dd(1.0)));
    }
    return y;
}

Dd dd_pow_int(Dd a, long long n) {
    if (n == 0) return {1.0, 0.0};
    bool inv = n < 0;
    unsigned long long m = inv ? static_cast<unsigned long long>(-n)
                               : static_cast<unsigned long long>(n);
    Dd base = a, acc{1.0, 0.0};
    while (m) {
        if (m & 1ULL) acc = dd_mul(acc, base);
        m >>= 1;
        if (m) base = dd_mul(base, base);
    }
    return inv ? dd_div(Dd(1.0), acc) : acc;
}

Dd dd_pow(Dd a, Dd b) {
    double r = std::round(b.hi);
    if (b.lo == 0.0 && b.hi == r && std::abs(r) <= 512.0)
        return dd_pow_int(a, static_cast<long long>(r));
    if (a.hi <= 0.0) raise(ErrorKind::Domain, "dd_pow: non-positive base with real exponent");
    return dd_exp(dd_mul(b, dd_log(a)));
}

// li(x) = Ei(log x) = gamma + log(log x) + sum_{n>=1} (log x)^n / (n * n!).
// All series terms are positive for x > 1, so there is no cancellation.
Dd dd_li(Dd x) {
    if (x.hi <= 1.0) raise(ErrorKind::Domain, "dd_li: argument <= 1");
    Dd y = dd_log(x);
    Dd sum = dd_add(kEulerGamma, dd_log(y));
    Dd pw{1.0, 0.0};
    Dd fact{1.0, 0.0};
    for (int n = 1; n <= 400; ++n) {
        pw = dd_mul(pw, y);
        fact = dd_mul(fact, Dd(static_cast<double>(n)));
        Dd term = dd_div(pw, dd_mul(fact, Dd(static_cast<double>(n))));
        sum = dd_add(sum, term);
        if (n > y.hi && std::abs(term.hi) < 1e-34 * (std::abs(sum.hi) + 1.0)) break;
    }
    return sum;
}

Dd dd_lgamma(Dd x) {
    if (x.hi <= 0.0) raise(ErrorKind::Domain, "dd_lgamma: argument <= 0");
    // lift into the Stirling range, lgamma(x) = lgamma(x+m) - sum log(x+i)
    Dd shift{0.0, 0.0};
    Dd z = x;
    while (z.hi < 32.0) {
        shift = dd_add(shift, dd_log(z));
        z = dd_add(z, 1.0);
    }
    // (z - 1/2) log z - z + log(2 pi)/2 + sum c_n / z^(2n-1)
    Dd lz = dd_log(z);
    Dd res = dd_mul(dd_sub(z, Dd(0.5)), lz);
    res = dd_sub(res, z);
    Dd half_log_2pi = dd_mul(dd_log(dd_mul(kPi, 2.0)), 0.5);
    res = dd_add(res, half_log_2pi);
    Dd z2 = dd_mul(z, z);
    Dd zp = z;
    for (const auto& c : kStirlingCoef) {
        Dd term = dd_div(dd_div(Dd(static_cast<double>(c.num)),
                                Dd(static_cast<double>(c.den))), zp);
        res = dd_add(res, term);
        zp = dd_mul(zp, z2);
    }
    return dd_sub(res, shift);
}

} // namespace basislab
