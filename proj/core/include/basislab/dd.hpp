#pragma once

#include <cmath>
#include <cstdint>

namespace basislab {

// Double-double value: hi + lo with |lo| <= ulp(hi)/2.  Gives ~31 decimal
// digits, enough to decide floors of values near 1e18 and to reduce
// alpha*[f(n)] mod 1 without losing the fractional part.
//
// Requires strict IEEE double evaluation; the build sets -ffp-contract=off.
struct Dd {
    double hi = 0.0;
    double lo = 0.0;

    Dd() = default;
    constexpr Dd(double h) : hi(h), lo(0.0) {}
    constexpr Dd(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

namespace dd_detail {

inline Dd quick_two_sum(double a, double b) {
    // assumes |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline Dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline Dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace dd_detail

inline Dd dd_add(Dd a, Dd b) {
    Dd s = dd_detail::two_sum(a.hi, b.hi);
    Dd t = dd_detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = dd_detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline Dd dd_add(Dd a, double b) {
    Dd s = dd_detail::two_sum(a.hi, b);
    s.lo += a.lo;
    return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline Dd dd_neg(Dd a) { return {-a.hi, -a.lo}; }
inline Dd dd_sub(Dd a, Dd b) { return dd_add(a, dd_neg(b)); }
inline Dd dd_sub(Dd a, double b) { return dd_add(a, -b); }

inline Dd dd_mul(Dd a, Dd b) {
    Dd p = dd_detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline Dd dd_mul(Dd a, double b) {
    Dd p = dd_detail::two_prod(a.hi, b);
    p.lo += a.lo * b;
    return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline Dd dd_div(Dd a, Dd b) {
    double q1 = a.hi / b.hi;
    Dd r = dd_sub(a, dd_mul(b, q1));
    double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    double q3 = r.hi / b.hi;
    Dd q = dd_detail::quick_two_sum(q1, q2);
    return dd_add(q, q3);
}

inline Dd dd_abs(Dd a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? dd_neg(a) : a; }

inline int dd_cmp(Dd a, Dd b) {
    if (a.hi < b.hi) return -1;
    if (a.hi > b.hi) return 1;
    if (a.lo < b.lo) return -1;
    if (a.lo > b.lo) return 1;
    return 0;
}

inline bool dd_lt(Dd a, Dd b) { return dd_cmp(a, b) < 0; }
inline bool dd_le(Dd a, Dd b) { return dd_cmp(a, b) <= 0; }

// floor with the hi/lo carry handled: floor(hi) can overshoot when hi is an
// exact integer and lo < 0.
Dd dd_floor(Dd a);
// a - floor(a), in [0, 1)
Dd dd_frac(Dd a);
// exact conversion of an integral dd (|a| < 2^62) to int64
std::int64_t dd_to_int64_exact(Dd a);
// exact dd representation of an int64 (doubles only hold 53 bits)
inline Dd dd_from_int64(std::int64_t m) {
    double hi = static_cast<double>(m);
    double lo = static_cast<double>(m - static_cast<std::int64_t>(hi));
    return dd_detail::quick_two_sum(hi, lo);
}

Dd dd_exp(Dd a);
Dd dd_log(Dd a);          // a > 0
Dd dd_pow_int(Dd a, long long n);
Dd dd_pow(Dd a, Dd b);    // a > 0
Dd dd_li(Dd x);           // principal-value logarithmic integral, x > 1
Dd dd_lgamma(Dd x);       // x > 0

Dd dd_pi();
Dd dd_ln2();
Dd dd_euler_gamma();

} // namespace basislab
