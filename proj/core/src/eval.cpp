#include "basislab/eval.hpp"

#include <cmath>

#include "basislab/errors.hpp"
#include "basislab/special.hpp"

namespace basislab {

namespace {

struct DoubleOps {
    using R = double;
    static R from(double v) { return v; }
    static R add(R a, R b) { return a + b; }
    static R mul(R a, R b) { return a * b; }
    static R div(R a, R b) {
        if (b == 0.0) raise(ErrorKind::Domain, "eval: division by zero");
        return a / b;
    }
    static R log(R a) {
        if (a <= 0.0) raise(ErrorKind::Domain, "eval: log of non-positive value");
        return std::log(a);
    }
    static R exp(R a) {
        if (a > 700.0) raise(ErrorKind::Domain, "eval: exp overflow");
        return std::exp(a);
    }
    static R pow(R a, double e) {
        double r = std::round(e);
        if (e == r && std::abs(e) <= 512.0) {
            bool inv = e < 0.0;
            auto m = static_cast<unsigned long long>(inv ? -r : r);
            R base = a, acc = 1.0;
            while (m) {
                if (m & 1ULL) acc *= base;
                m >>= 1;
                if (m) base *= base;
            }
            return inv ? 1.0 / acc : acc;
        }
        if (a <= 0.0) raise(ErrorKind::Domain, "eval: non-positive base with real exponent");
        return std::pow(a, e);
    }
    static R li(R a) { return li_double(a); }
    static R lgamma(R a) {
        if (a <= 0.0) raise(ErrorKind::Domain, "eval: loggamma of non-positive value");
        return std::lgamma(a);
    }
};

struct DdOps {
    using R = Dd;
    static R from(double v) { return Dd(v); }
    static R add(R a, R b) { return dd_add(a, b); }
    static R mul(R a, R b) { return dd_mul(a, b); }
    static R div(R a, R b) {
        if (b.hi == 0.0 && b.lo == 0.0) raise(ErrorKind::Domain, "eval: division by zero");
        return dd_div(a, b);
    }
    static R log(R a) { return dd_log(a); }
    static R exp(R a) { return dd_exp(a); }
    static R pow(R a, double e) { return dd_pow(a, Dd(e)); }
    static R li(R a) { return dd_li(a); }
    static R lgamma(R a) { return dd_lgamma(a); }
};

template <class Ops>
typename Ops::R eval_rec(const ExprNode& node, typename Ops::R x) {
    using R = typename Ops::R;
    switch (node.kind) {
        case ExprKind::Constant: return Ops::from(node.value);
        case ExprKind::Variable: return x;
        case ExprKind::Sum: {
            R acc = eval_rec<Ops>(*node.args[0], x);
            for (std::size_t i = 1; i < node.args.size(); ++i)
                acc = Ops::add(acc, eval_rec<Ops>(*node.args[i], x));
            return acc;
        }
        case ExprKind::Product: {
            R acc = eval_rec<Ops>(*node.args[0], x);
            for (std::size_t i = 1; i < node.args.size(); ++i)
                acc = Ops::mul(acc, eval_rec<Ops>(*node.args[i], x));
            return acc;
        }
        case ExprKind::Quotient:
            return Ops::div(eval_rec<Ops>(*node.args[0], x), eval_rec<Ops>(*node.args[1], x));
        case ExprKind::Power:
            return Ops::pow(eval_rec<Ops>(*node.args[0], x), node.exponent);
        case ExprKind::Log: return Ops::log(eval_rec<Ops>(*node.args[0], x));
        case ExprKind::Exp: return Ops::exp(eval_rec<Ops>(*node.args[0], x));
        case ExprKind::Li: return Ops::li(eval_rec<Ops>(*node.args[0], x));
        case ExprKind::LogGamma: return Ops::lgamma(eval_rec<Ops>(*node.args[0], x));
    }
    raise(ErrorKind::Internal, "unreachable expression kind");
}

} // namespace

double eval_node(const ExprNode& node, double x) { return eval_rec<DoubleOps>(node, x); }
Dd eval_node_dd(const ExprNode& node, Dd x) { return eval_rec<DdOps>(node, x); }

double eval(const FunctionExpr& f, double x, Precision precision) {
    if (x < 1.0) raise(ErrorKind::Domain, "eval: x must be >= 1");
    if (precision == Precision::Extended) return eval_dd(f, x).to_double();
    return eval_node(f.root(), x + f.shift());
}

Dd eval_dd(const FunctionExpr& f, double x) {
    if (x < 1.0) raise(ErrorKind::Domain, "eval: x must be >= 1");
    return eval_node_dd(f.root(), dd_add(Dd(x), f.shift()));
}

} // namespace basislab
