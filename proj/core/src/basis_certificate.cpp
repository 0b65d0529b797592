#include "basislab/basis_certificate.hpp"

#include <algorithm>
#include <numeric>

#include "basislab/errors.hpp"

namespace basislab {

namespace {

using Int128 = __int128;

// gcd(a, b) = u*a + v*b with all intermediates checked against int64
struct ExtGcd {
    std::int64_t g, u, v;
};

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_u = 1, u = 0;
    std::int64_t old_v = 0, v = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_u - q * u; old_u = u; u = t;
        t = old_v - q * v; old_v = v; v = t;
    }
    return {old_r, old_u, old_v};
}

std::int64_t checked_from_128(Int128 v, const char* what) {
    if (v > Int128(INT64_MAX) || v < Int128(INT64_MIN))
        raise(ErrorKind::Capacity, std::string(what) + ": coefficient exceeds int64");
    return static_cast<std::int64_t>(v);
}

} // namespace

std::int64_t BasisCertificate::coef_abs_sum() const {
    std::int64_t s = 0;
    for (auto x : coefficients) s += std::abs(x);
    return s;
}

void BasisCertificate::attach_gap_info(int s_fold, std::int64_t gap, std::int64_t least) {
    s = s_fold;
    g = gap;
    M = least;
    order_bound = s + g * coef_abs_sum();
}

BasisCertificate gcd_bezout(const SequenceWindow& seq) {
    constexpr std::size_t kPrefixCap = 10'000;
    if (seq.values.size() < 2)
        raise(ErrorKind::Range, "gcd_bezout: need at least two sequence values");

    const std::int64_t a1 = seq.values[0];
    std::size_t n = std::min(seq.values.size(), kPrefixCap);

    // accumulate gcd of the differences; keep exact coefficients as we go
    std::int64_t g = 0;
    std::vector<std::int64_t> coef;  // x_2..x_j so far, for sum x_j (a_j - a_1) = g
    std::size_t k_index = 0;
    for (std::size_t j = 1; j < n; ++j) {
        std::int64_t d = seq.values[j] - a1;
        if (d == 0) {
            coef.push_back(0);
            continue;
        }
        if (g == 0) {
            g = std::abs(d);
            coef.push_back(d > 0 ? 1 : -1);
        } else {
            auto e = ext_gcd(g, d);
            // new gcd = u*g + v*d: rescale old coefficients by u, append v
            for (auto& x : coef)
                x = checked_from_128(Int128(x) * e.u, "gcd_bezout");
            coef.push_back(e.v);
            g = e.g;
        }
        if (g == 1) {
            k_index = j;
            break;
        }
    }
    if (g != 1)
        raise(ErrorKind::Range,
              "gcd_bezout: gcd of the differences over the measured window is " + std::to_string(g));

    BasisCertificate cert;
    cert.k = static_cast<int>(k_index) + 1;
    cert.prefix.assign(seq.values.begin(), seq.values.begin() + static_cast<std::ptrdiff_t>(k_index) + 1);
    cert.coefficients = std::move(coef);

    // exact verification of the certificate
    Int128 check = 0;
    for (std::size_t j = 0; j < cert.coefficients.size(); ++j)
        check += Int128(cert.coefficients[j]) * (cert.prefix[j + 1] - a1);
    if (check != 1)
        raise(ErrorKind::Internal, "gcd_bezout: certificate does not sum to 1");
    return cert;
}

std::vector<std::int64_t> represent_with_certificate(std::int64_t N, const SequenceWindow& seq,
                                                     int s, const BasisCertificate& cert,
                                                     const SumsetBitmap& bm) {
    (void)seq;  // the bitmap carries the element list; kept for interface symmetry
    if (cert.s != s)
        raise(ErrorKind::Range, "represent: certificate was finalized for a different s");
    const std::int64_t a1 = cert.prefix[0];

    // a_j' takes a_j when x_j >= 0, else a_1; a_j'' the other way round
    Int128 sum_app = 0;   // sum |x_j| a_j'
    Int128 sum_app2 = 0;  // sum |x_j| a_j''
    for (std::size_t j = 0; j < cert.coefficients.size(); ++j) {
        std::int64_t x = cert.coefficients[j];
        std::int64_t aj = cert.prefix[j + 1];
        std::int64_t ap = x >= 0 ? aj : a1;
        std::int64_t app = x >= 0 ? a1 : aj;
        sum_app += Int128(std::abs(x)) * ap;
        sum_app2 += Int128(std::abs(x)) * app;
    }
    if (sum_app != sum_app2 + 1)
        raise(ErrorKind::Internal, "represent: certificate identity violated");

    Int128 threshold = Int128(cert.M) + Int128(cert.g) * sum_app2;
    if (Int128(N) < threshold)
        raise(ErrorKind::Range, "represent: N below the certificate threshold M + g*sum|x_j|a_j''");

    Int128 t128 = Int128(N) - Int128(cert.g) * sum_app2;
    std::int64_t t = checked_from_128(t128, "represent");
    if (t > bm.limit)
        raise(ErrorKind::Range, "represent: bitmap does not cover N's landing point");

    // t = b + h with b in the s-fold sumset and 0 <= h <= g
    std::int64_t b = -1, h = -1;
    for (std::int64_t cand = t; cand >= t - cert.g && cand >= 0; --cand) {
        if (bm.bits.test(static_cast<std::size_t>(cand))) {
            b = cand;
            h = t - cand;
            break;
        }
    }
    if (b < 0)
        raise(ErrorKind::Range, "represent: no sumset element within g below the landing point");

    std::vector<std::int64_t> parts = decompose(bm, b);

    // h copies of the a_j' pattern and g-h copies of the a_j'' pattern
    for (std::size_t j = 0; j < cert.coefficients.size(); ++j) {
        std::int64_t x = cert.coefficients[j];
        std::int64_t aj = cert.prefix[j + 1];
        std::int64_t ap = x >= 0 ? aj : a1;
        std::int64_t app = x >= 0 ? a1 : aj;
        for (std::int64_t c = 0; c < std::abs(x); ++c) {
            for (std::int64_t i = 0; i < h; ++i) parts.push_back(ap);
            for (std::int64_t i = 0; i < cert.g - h; ++i) parts.push_back(app);
        }
    }

    Int128 total = 0;
    for (auto p : parts) total += p;
    if (total != N)
        raise(ErrorKind::Internal, "represent: multiset does not sum to N");
    if (static_cast<std::int64_t>(parts.size()) > cert.order_bound)
        raise(ErrorKind::Internal, "represent: multiset exceeds the order bound");
    std::sort(parts.begin(), parts.end());
    return parts;
}

} // namespace basislab
