#include "basislab/jet.hpp"

#include <array>
#include <cmath>

#include "basislab/errors.hpp"
#include "basislab/special.hpp"

namespace basislab {

namespace {

// Truncated Taylor series f(x0 + t) = sum c[j] t^j, fixed length n = k+1.
struct Series {
    int n = 1;
    std::array<double, kMaxJetOrder + 1> c{};
};

Series s_const(int n, double v) {
    Series s;
    s.n = n;
    s.c[0] = v;
    return s;
}

Series s_var(int n, double x0) {
    Series s = s_const(n, x0);
    if (n > 1) s.c[1] = 1.0;
    return s;
}

Series s_add(const Series& a, const Series& b) {
    Series r = a;
    for (int j = 0; j < r.n; ++j) r.c[j] += b.c[j];
    return r;
}

Series s_mul(const Series& a, const Series& b) {
    Series r;
    r.n = a.n;
    for (int j = 0; j < r.n; ++j) {
        double acc = 0.0;
        for (int i = 0; i <= j; ++i) acc += a.c[i] * b.c[j - i];
        r.c[j] = acc;
    }
    return r;
}

Series s_div(const Series& a, const Series& b) {
    if (b.c[0] == 0.0) raise(ErrorKind::Domain, "jet: division by zero at expansion point");
    Series q;
    q.n = a.n;
    for (int j = 0; j < q.n; ++j) {
        double acc = a.c[j];
        for (int i = 0; i < j; ++i) acc -= q.c[i] * b.c[j - i];
        q.c[j] = acc / b.c[0];
    }
    return q;
}

Series s_log(const Series& u) {
    if (u.c[0] <= 0.0) raise(ErrorKind::Domain, "jet: log of non-positive value");
    Series v;
    v.n = u.n;
    v.c[0] = std::log(u.c[0]);
    for (int j = 1; j < v.n; ++j) {
        double acc = j * u.c[j];
        for (int i = 1; i < j; ++i) acc -= i * v.c[i] * u.c[j - i];
        v.c[j] = acc / (j * u.c[0]);
    }
    return v;
}

Series s_exp(const Series& u) {
    if (u.c[0] > 700.0) raise(ErrorKind::Domain, "jet: exp overflow");
    Series w;
    w.n = u.n;
    w.c[0] = std::exp(u.c[0]);
    for (int j = 1; j < w.n; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= j; ++i) acc += i * u.c[i] * w.c[j - i];
        w.c[j] = acc / j;
    }
    return w;
}

Series s_pow(const Series& u, double e) {
    double r = std::round(e);
    if (e == r && std::abs(r) <= 32.0) {
        // integer exponents via products; robust when u0 is tiny
        auto m = static_cast<unsigned>(std::abs(r));
        Series acc = s_const(u.n, 1.0);
        Series base = u;
        while (m) {
            if (m & 1U) acc = s_mul(acc, base);
            m >>= 1;
            if (m) base = s_mul(base, base);
        }
        return e < 0.0 ? s_div(s_const(u.n, 1.0), acc) : acc;
    }
    if (u.c[0] <= 0.0)
        raise(ErrorKind::Domain, "jet: non-positive base with real exponent");
    // p = u^e from p'u = e u'p:  j p_j u_0 = sum_{i=1..j} (e i - (j - i)) u_i p_{j-i}
    Series p;
    p.n = u.n;
    p.c[0] = std::pow(u.c[0], e);
    for (int j = 1; j < p.n; ++j) {
        double acc = 0.0;
        for (int i = 1; i <= j; ++i) acc += (e * i - (j - i)) * u.c[i] * p.c[j - i];
        p.c[j] = acc / (j * u.c[0]);
    }
    return p;
}

// antiderivative step shared by li and loggamma: w0 given, dw/dt = g(t)
Series s_integrate(const Series& g, int n, double w0) {
    Series w;
    w.n = n;
    w.c[0] = w0;
    for (int j = 1; j < n; ++j) w.c[j] = g.c[j - 1] / j;
    return w;
}

Series s_deriv(const Series& u) {
    Series d;
    d.n = u.n;  // keep length; top coefficient is truncated to 0
    for (int j = 0; j + 1 < u.n; ++j) d.c[j] = (j + 1) * u.c[j + 1];
    d.c[u.n - 1] = 0.0;
    return d;
}

Series s_li(const Series& u) {
    if (u.c[0] <= 1.0) raise(ErrorKind::Domain, "jet: li argument <= 1");
    Series rate = s_div(s_deriv(u), s_log(u));
    return s_integrate(rate, u.n, li_double(u.c[0]));
}

Series s_loggamma(const Series& u) {
    if (u.c[0] <= 0.0) raise(ErrorKind::Domain, "jet: loggamma of non-positive value");
    // psi(u) as a Taylor composition around u0, then integrate psi(u) u'
    Series s = u;
    s.c[0] = 0.0;
    Series psi = s_const(u.n, polygamma(0, u.c[0]));
    Series spow = s_const(u.n, 1.0);
    double fact = 1.0;
    for (int m = 1; m < u.n; ++m) {
        spow = s_mul(spow, s);
        fact *= m;
        double coef = polygamma(m, u.c[0]) / fact;
        for (int j = 0; j < u.n; ++j) psi.c[j] += coef * spow.c[j];
    }
    Series rate = s_mul(psi, s_deriv(u));
    return s_integrate(rate, u.n, std::lgamma(u.c[0]));
}

Series eval_series(const ExprNode& node, int n, double x0) {
    switch (node.kind) {
        case ExprKind::Constant: return s_const(n, node.value);
        case ExprKind::Variable: return s_var(n, x0);
        case ExprKind::Sum: {
            Series acc = eval_series(*node.args[0], n, x0);
            for (std::size_t i = 1; i < node.args.size(); ++i)
                acc = s_add(acc, eval_series(*node.args[i], n, x0));
            return acc;
        }
        case ExprKind::Product: {
            Series acc = eval_series(*node.args[0], n, x0);
            for (std::size_t i = 1; i < node.args.size(); ++i)
                acc = s_mul(acc, eval_series(*node.args[i], n, x0));
            return acc;
        }
        case ExprKind::Quotient:
            return s_div(eval_series(*node.args[0], n, x0), eval_series(*node.args[1], n, x0));
        case ExprKind::Power: return s_pow(eval_series(*node.args[0], n, x0), node.exponent);
        case ExprKind::Log: return s_log(eval_series(*node.args[0], n, x0));
        case ExprKind::Exp: return s_exp(eval_series(*node.args[0], n, x0));
        case ExprKind::Li: return s_li(eval_series(*node.args[0], n, x0));
        case ExprKind::LogGamma: return s_loggamma(eval_series(*node.args[0], n, x0));
    }
    raise(ErrorKind::Internal, "unreachable expression kind");
}

} // namespace

Jet eval_jet(const FunctionExpr& f, double x, int k) {
    if (k < 0 || k > kMaxJetOrder)
        raise(ErrorKind::Range, "eval_jet: order must be in [0, 12]");
    if (x < 1.0) raise(ErrorKind::Domain, "eval_jet: x must be >= 1");
    Series s = eval_series(f.root(), k + 1, x + f.shift());
    Jet jet;
    jet.x = x;
    jet.order = k;
    jet.derivs.resize(static_cast<std::size_t>(k) + 1);
    double fact = 1.0;
    for (int j = 0; j <= k; ++j) {
        if (j > 0) fact *= j;
        jet.derivs[static_cast<std::size_t>(j)] = s.c[j] * fact;
    }
    return jet;
}

} // namespace basislab
