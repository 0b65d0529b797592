#include <doctest.h>

#include <cmath>
#include <vector>

#include "basislab/classify.hpp"
#include "basislab/dd.hpp"
#include "basislab/errors.hpp"
#include "basislab/eval.hpp"
#include "basislab/expr.hpp"
#include "basislab/jet.hpp"
#include "basislab/special.hpp"

using namespace basislab;

namespace {

const char* kWildExpr =
    "shift=2 add(mul(3.141592653589793, pow(x, 3)), div(pow(x, 1.4142135623730951), log(log(x))))";

// Central finite differences of eval, 4th-order stencils, j <= 4.  The
// stencil combinations cancel catastrophically in plain doubles at order 4,
// so the evaluations and the combination run in double-double.
double fd_derivative(const FunctionExpr& f, double x, int j) {
    double h = std::max(0.005 * x, 1e-3);
    auto comb = [&](std::initializer_list<std::pair<double, double>> terms, double denom) {
        Dd acc{0.0, 0.0};
        for (auto [offset, w] : terms)
            acc = dd_add(acc, dd_mul(eval_dd(f, x + offset * h), Dd(w)));
        return dd_div(acc, Dd(denom)).to_double();
    };
    switch (j) {
        case 0: return eval(f, x);
        case 1:
            return comb({{2, -1}, {1, 8}, {-1, -8}, {-2, 1}}, 12 * h);
        case 2:
            return comb({{2, -1}, {1, 16}, {0, -30}, {-1, 16}, {-2, -1}}, 12 * h * h);
        case 3:
            return comb({{-3, -1}, {-2, 8}, {-1, -13}, {1, 13}, {2, -8}, {3, 1}}, 8 * h * h * h);
        case 4:
            return comb({{-3, -1}, {-2, 12}, {-1, -39}, {0, 56}, {1, -39}, {2, 12}, {3, -1}},
                        6 * h * h * h * h);
        default: return 0.0;
    }
}

// Simpson quadrature of 1/log t on [2, x], the independent li oracle
double li_quadrature(double x) {
    const double kLi2 = 1.0451637801174928;  // pv value at the lower endpoint
    const int n = 20000;
    double h = (x - 2.0) / n;
    double acc = 1.0 / std::log(2.0) + 1.0 / std::log(x);
    for (int i = 1; i < n; ++i) {
        double t = 2.0 + i * h;
        acc += (i % 2 ? 4.0 : 2.0) / std::log(t);
    }
    return kLi2 + acc * h / 3.0;
}

} // namespace

TEST_CASE("double-double arithmetic basics") {
    Dd a = dd_mul(dd_pi(), dd_from_int64(1'000'000'000'000'000'007LL));
    // frozen with 40-digit arithmetic
    CHECK(dd_frac(a).to_double() == doctest::Approx(0.45379195840805555).epsilon(1e-12));

    CHECK(dd_exp(dd_log(Dd(7.25))).to_double() == doctest::Approx(7.25).epsilon(1e-30));
    CHECK(dd_pow_int(Dd(3.0), 5).to_double() == 243.0);
    CHECK(dd_to_int64_exact(dd_floor(Dd(5.0, -1e-25))) == 4);
    CHECK(dd_to_int64_exact(dd_floor(Dd(5.0, 1e-25))) == 5);

    // dd li and lgamma against the double-precision references
    CHECK(dd_li(Dd(10.0)).to_double() == doctest::Approx(6.165599504787298).epsilon(1e-14));
    CHECK(dd_lgamma(Dd(3.0)).to_double() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(dd_lgamma(Dd(101.5)).to_double() ==
          doctest::Approx(std::lgamma(101.5)).epsilon(1e-13));
}

TEST_CASE("eval: polynomial identity and the wild example") {
    auto sq = FunctionExpr::parse("pow(x, 2)");
    CHECK(eval(sq, 3.0) == 9.0);

    auto wild = FunctionExpr::parse(kWildExpr);
    CHECK(wild.shift() == 2.0);
    // direct formula, independently of the tree walk
    double x = 102.0;
    double direct = M_PI * x * x * x + std::pow(x, std::sqrt(2.0)) / std::log(std::log(x));
    double tree = eval(wild, 100.0);
    CHECK(tree == doctest::Approx(direct).epsilon(1e-12));
    CHECK(tree == doctest::Approx(3334335.6133719333).epsilon(1e-12));
}

TEST_CASE("eval: li convention") {
    auto f = FunctionExpr::parse("li(x)");
    CHECK(f.shift() == 1.0);  // li(1) diverges, so the resolver shifts by 1
    // principal value at 2, quadrature oracle
    CHECK(eval(f, 1.0) == doctest::Approx(1.0451637801174928).epsilon(1e-12));
    CHECK(li_double(200.0) == doctest::Approx(li_quadrature(200.0)).epsilon(1e-9));
    CHECK_THROWS_AS((void)li_double(0.5), Error);
}

TEST_CASE("eval: domain errors signal a too-small shift") {
    auto f = FunctionExpr::parse("shift=0 log(log(x))");
    CHECK_THROWS_AS((void)eval(f, 1.0), Error);  // log log 1 undefined
    auto auto_shifted = FunctionExpr::parse("log(log(x))");
    CHECK(auto_shifted.shift() >= 1.0);
    CHECK(std::isfinite(eval(auto_shifted, 1.0)));
}

TEST_CASE("eval_jet: exact polynomial examples") {
    auto sq = FunctionExpr::parse("pow(x, 2)");
    Jet j = eval_jet(sq, 3.0, 2);
    CHECK(j[0] == 9.0);
    CHECK(j[1] == 6.0);
    CHECK(j[2] == 2.0);

    auto p32 = FunctionExpr::parse("pow(x, 1.5)");
    Jet j2 = eval_jet(p32, 4.0, 1);
    CHECK(j2[0] == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(j2[1] == doctest::Approx(3.0).epsilon(1e-15));

    CHECK_THROWS_AS((void)eval_jet(sq, 3.0, 13), Error);
}

TEST_CASE("eval_jet vs central finite differences") {
    std::vector<FunctionExpr> fns = {
        FunctionExpr::parse("pow(x, 2)"),
        FunctionExpr::parse("pow(x, 1.5)"),
        FunctionExpr::parse("add(pow(x, 2), log(x))"),
        FunctionExpr::parse(kWildExpr),
        FunctionExpr::parse("pow(li(x), 2)"),
        FunctionExpr::parse("pow(loggamma(x), 1.4142135623730951)"),
    };
    for (const auto& f : fns) {
        for (double x : {2.0, 5.0, 17.0, 120.0, 900.0}) {
            Jet jet = eval_jet(f, x, 4);
            for (int j = 1; j <= 4; ++j) {
                double fd = fd_derivative(f, x, j);
                double denom = std::max(1.0, std::abs(jet[j]));
                CHECK(std::abs(jet[j] - fd) / denom <= 1e-6);
            }
        }
    }
}

TEST_CASE("eval_jet: li and loggamma derivative values") {
    auto li_f = FunctionExpr::parse("li(x)");  // auto shift 1: f(x) = li(x + 1)
    Jet j = eval_jet(li_f, 9.0, 2);
    CHECK(j[1] == doctest::Approx(1.0 / std::log(10.0)).epsilon(1e-14));
    CHECK(j[2] == doctest::Approx(-1.0 / (10.0 * std::log(10.0) * std::log(10.0))).epsilon(1e-12));

    auto lg = FunctionExpr::parse("shift=0 loggamma(x)");
    Jet j2 = eval_jet(lg, 5.0, 1);
    CHECK(j2[1] == doctest::Approx(1.5061176684318005).epsilon(1e-12));  // digamma(5)
}

TEST_CASE("monotone-increase probe") {
    auto f = FunctionExpr::parse("pow(x, 1.5)");
    double prev = 0.0;
    for (double x = 2.0; x <= 4096.0; x *= 2.0) {
        CHECK(eval_jet(f, x, 1)[1] > 0.0);
        double v = eval(f, x);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("classify: pure polynomial") {
    auto f = FunctionExpr::parse("pow(x, 2)");
    auto p = classify(f);
    CHECK(p.cls == FnClass::I);
    CHECK(p.d == 2);
    REQUIRE(p.poly.size() == 2);
    CHECK(p.poly[0] == doctest::Approx(0.0));
    CHECK(p.poly[1] == doctest::Approx(1.0));
    CHECK(p.subpolynomial_remainder);
}

TEST_CASE("classify: polynomial plus smaller non-polynomial") {
    auto f = FunctionExpr::parse(kWildExpr);
    auto p = classify(f);
    CHECK(p.cls == FnClass::III);
    CHECK(p.d == 3);
    CHECK(p.c == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
    CHECK_FALSE(p.subpolynomial_remainder);

    auto g = FunctionExpr::parse("add(pow(x, 2), log(x))");
    auto q = classify(g);
    CHECK(q.cls == FnClass::III);
    CHECK(q.d == 2);
    CHECK(q.subpolynomial_remainder);
}

TEST_CASE("classify: non-polynomial growth") {
    auto f = FunctionExpr::parse("div(pow(x, 2), log(x))");
    auto p = classify(f);
    CHECK(p.cls == FnClass::II);
    CHECK(p.c == doctest::Approx(2.0).epsilon(0.01));
    CHECK(p.poly.empty());

    auto g = FunctionExpr::parse("pow(x, 1.5)");
    auto q = classify(g);
    CHECK(q.cls == FnClass::II);
    CHECK(q.c == doctest::Approx(1.5).epsilon(0.001));
    CHECK(q.degree() == doctest::Approx(1.5).epsilon(0.001));
}

TEST_CASE("classify: declared profile is validated and returned") {
    auto f = FunctionExpr::parse("add(pow(x, 2), log(x))");
    DegreeProfile d;
    d.cls = FnClass::III;
    d.d = 2;
    d.c = 0.0;
    d.subpolynomial_remainder = true;
    d.poly = {0.0, 1.0};
    auto p = classify(f, d);
    CHECK(p.cls == FnClass::III);
    CHECK(p.d == 2);

    DegreeProfile wrong = d;
    wrong.d = 3;
    wrong.poly = {0.0, 0.0, 1.0};
    CHECK_THROWS_AS((void)classify(f, wrong), Error);
}

TEST_CASE("classify is idempotent on the implied reconstruction") {
    for (const char* src :
         {"pow(x, 2)", kWildExpr, "pow(x, 1.5)", "add(pow(x, 2), log(x))"}) {
        auto p = classify(FunctionExpr::parse(src));
        auto q = classify(reconstruct(p));
        CHECK(p.cls == q.cls);
        CHECK(p.d == q.d);
        CHECK(q.c == doctest::Approx(p.c).epsilon(0.05));
    }
}

TEST_CASE("polynomial_part: symbolic splits") {
    auto f = FunctionExpr::parse("add(pow(x, 2), log(x))");
    auto p = classify(f);
    auto alpha = polynomial_part(f, p);
    REQUIRE(alpha.size() == 2);
    CHECK(alpha[0] == 0.0);
    CHECK(alpha[1] == 1.0);

    // li over a shifted argument keeps the whole expression shift-free, so
    // the monomial coefficients stay as written
    auto g = FunctionExpr::parse("shift=0 add(mul(2, pow(x, 3)), mul(5, x), li(add(x, 1)))");
    auto pg = classify(g);
    auto beta = polynomial_part(g, pg);
    REQUIRE(beta.size() == 3);
    CHECK(beta[0] == 5.0);
    CHECK(beta[1] == 0.0);
    CHECK(beta[2] == 2.0);
}

TEST_CASE("polynomial_part: Vandermonde fit path") {
    // (x+1)^2 carries no syntactic monomials; the fit recovers (2, 1) and the
    // constant 1 is absorbed into the remainder
    auto f = FunctionExpr::parse("pow(add(x, 1), 2)");
    auto p = classify(f);
    CHECK(p.cls == FnClass::I);
    auto alpha = polynomial_part(f, p);
    REQUIRE(alpha.size() == 2);
    CHECK(alpha[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(alpha[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("class III remainder growth matches c_f") {
    auto f = FunctionExpr::parse(kWildExpr);
    auto p = classify(f);
    auto alpha = polynomial_part(f, p);
    auto rem = [&](double x) {
        Dd acc{0.0, 0.0};
        for (std::size_t i = alpha.size(); i-- > 0;)
            acc = dd_mul(dd_add(acc, alpha[i]), Dd(x));
        return dd_sub(eval_dd(f, x), acc).to_double();
    };
    for (double x : {1e4, 2e4, 1e5}) {
        double ratio = std::log2(std::abs(rem(2 * x)) / std::abs(rem(x)));
        CHECK(std::abs(ratio - p.c) <= 0.1);
    }
}

TEST_CASE("parser: round trip and errors") {
    auto f = FunctionExpr::parse(kWildExpr);
    auto g = FunctionExpr::parse(f.to_string());
    CHECK(f.to_string() == g.to_string());
    CHECK(eval(f, 50.0) == eval(g, 50.0));

    CHECK_THROWS_AS((void)FunctionExpr::parse("frob(x)"), Error);
    CHECK_THROWS_AS((void)FunctionExpr::parse("add(x)"), Error);
    CHECK_THROWS_AS((void)FunctionExpr::parse("pow(x, y)"), Error);
    CHECK_THROWS_AS((void)FunctionExpr::parse("log(x) trailing"), Error);

    // sub is sugar
    auto s = FunctionExpr::parse("sub(pow(x, 2), x)");
    CHECK(eval(s, 10.0) == 90.0);
}

TEST_CASE("growth violation is rejected") {
    // exp(x) is not even finite at the probe points
    CHECK_THROWS_AS((void)FunctionExpr::parse("exp(x)"), Error);
    // exp(log^2 x) stays finite but its slope never stabilizes
    auto f = FunctionExpr::parse("exp(pow(log(x), 2))");
    CHECK_THROWS_AS((void)classify(f), Error);
}
