#include "basislab/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "basislab/errors.hpp"
#include "basislab/eval.hpp"

namespace basislab {

namespace fe {

ExprPtr c(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Constant;
    n->value = v;
    return n;
}

ExprPtr x() {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Variable;
    return n;
}

static ExprPtr nary(ExprKind kind, std::vector<ExprPtr> parts) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->args = std::move(parts);
    return n;
}

ExprPtr add(std::vector<ExprPtr> parts) { return nary(ExprKind::Sum, std::move(parts)); }
ExprPtr add(ExprPtr a, ExprPtr b) { return add(std::vector<ExprPtr>{std::move(a), std::move(b)}); }
ExprPtr mul(std::vector<ExprPtr> parts) { return nary(ExprKind::Product, std::move(parts)); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return mul(std::vector<ExprPtr>{std::move(a), std::move(b)}); }
ExprPtr div(ExprPtr num, ExprPtr den) {
    return nary(ExprKind::Quotient, {std::move(num), std::move(den)});
}

ExprPtr pow(ExprPtr base, double exponent) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Power;
    n->exponent = exponent;
    n->args.push_back(std::move(base));
    return n;
}

static ExprPtr unary(ExprKind kind, ExprPtr a) { return nary(kind, {std::move(a)}); }
ExprPtr log(ExprPtr a) { return unary(ExprKind::Log, std::move(a)); }
ExprPtr exp(ExprPtr a) { return unary(ExprKind::Exp, std::move(a)); }
ExprPtr li(ExprPtr a) { return unary(ExprKind::Li, std::move(a)); }
ExprPtr loggamma(ExprPtr a) { return unary(ExprKind::LogGamma, std::move(a)); }

} // namespace fe

void check_well_formed(const ExprNode& node) {
    auto want = [&](std::size_t n) {
        if (node.args.size() != n)
            raise(ErrorKind::Config, "expression node has wrong arity");
    };
    switch (node.kind) {
        case ExprKind::Constant:
            want(0);
            if (!std::isfinite(node.value))
                raise(ErrorKind::Config, "non-finite constant");
            break;
        case ExprKind::Variable: want(0); break;
        case ExprKind::Sum:
        case ExprKind::Product:
            if (node.args.size() < 2)
                raise(ErrorKind::Config, "sum/product needs at least two operands");
            break;
        case ExprKind::Quotient: want(2); break;
        case ExprKind::Power:
            want(1);
            if (!std::isfinite(node.exponent))
                raise(ErrorKind::Config, "non-finite power exponent");
            break;
        case ExprKind::Log:
        case ExprKind::Exp:
        case ExprKind::Li:
        case ExprKind::LogGamma: want(1); break;
    }
    for (const auto& a : node.args) check_well_formed(*a);
}

double resolve_shift(const ExprPtr& root) {
    static const double probes[] = {1.0, 2.0, 10.0, 1e3, 1e6};
    for (int k0 = 0; k0 <= 64; ++k0) {
        bool ok = true;
        for (double p : probes) {
            try {
                double v = eval_node(*root, p + k0);
                if (!std::isfinite(v)) { ok = false; break; }
            } catch (const Error&) {
                ok = false;
                break;
            }
        }
        if (ok) return k0;
    }
    raise(ErrorKind::Domain, "no shift in {0..64} makes the expression finite at the probe points");
}

FunctionExpr::FunctionExpr(ExprPtr root, double shift) : root_(std::move(root)), shift_(shift) {
    if (!root_) raise(ErrorKind::Config, "empty expression");
    if (shift_ < 0.0 || !std::isfinite(shift_))
        raise(ErrorKind::Config, "shift must be a finite non-negative real");
    check_well_formed(*root_);
    static const double probes[] = {1.0, 2.0, 10.0, 1e3, 1e6};
    for (double p : probes) {
        double v = eval_node(*root_, p + shift_);  // throws Domain if invalid
        if (!std::isfinite(v))
            raise(ErrorKind::Domain, "expression not finite at probe x=" + std::to_string(p) +
                                         " with the declared shift");
    }
}

namespace {

struct Parser {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        raise(ErrorKind::Config,
              "expression parse error at offset " + std::to_string(pos) + ": " + msg);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos) fail("expected identifier or number");
        return std::string(s.substr(start, pos - start));
    }

    double number() {
        skip_ws();
        const char* begin = s.data() + pos;
        const char* end = s.data() + s.size();
        double v = 0.0;
        auto [p, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc()) fail("malformed number");
        pos += static_cast<std::size_t>(p - begin);
        return v;
    }

    bool looks_numeric() {
        skip_ws();
        if (pos >= s.size()) return false;
        char c = s[pos];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
    }

    ExprPtr expr() {
        skip_ws();
        if (looks_numeric()) return fe::c(number());
        std::string name = ident();
        if (name == "x") return fe::x();
        expect('(');
        ExprPtr out;
        if (name == "const") {
            double v = number();
            out = fe::c(v);
        } else if (name == "add" || name == "mul") {
            std::vector<ExprPtr> parts;
            parts.push_back(expr());
            while (eat(',')) parts.push_back(expr());
            if (parts.size() < 2) fail(name + " needs at least two operands");
            out = name == "add" ? fe::add(std::move(parts)) : fe::mul(std::move(parts));
        } else if (name == "sub") {
            ExprPtr a = expr();
            expect(',');
            ExprPtr b = expr();
            out = fe::add(std::move(a), fe::mul(fe::c(-1.0), std::move(b)));
        } else if (name == "div") {
            ExprPtr a = expr();
            expect(',');
            ExprPtr b = expr();
            out = fe::div(std::move(a), std::move(b));
        } else if (name == "pow") {
            ExprPtr base = expr();
            expect(',');
            skip_ws();
            double e;
            if (looks_numeric()) {
                e = number();
            } else {
                // allow pow(x, const(1.5))
                std::string cn = ident();
                if (cn != "const") fail("power exponent must be a numeric literal or const(...)");
                expect('(');
                e = number();
                expect(')');
            }
            out = fe::pow(std::move(base), e);
        } else if (name == "log") {
            out = fe::log(expr());
        } else if (name == "exp") {
            out = fe::exp(expr());
        } else if (name == "li") {
            out = fe::li(expr());
        } else if (name == "loggamma") {
            out = fe::loggamma(expr());
        } else {
            fail("unknown function '" + name + "'");
        }
        expect(')');
        return out;
    }
};

std::string fmt_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

} // namespace

FunctionExpr FunctionExpr::parse(std::string_view text) {
    Parser p{text};
    p.skip_ws();
    bool have_shift = false;
    double shift = 0.0;
    if (text.substr(p.pos, 6) == "shift=") {
        p.pos += 6;
        shift = p.number();
        have_shift = true;
    }
    ExprPtr root = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input after expression");
    check_well_formed(*root);
    if (!have_shift) shift = resolve_shift(root);
    return FunctionExpr(std::move(root), shift);
}

std::string to_string(const ExprNode& node) {
    switch (node.kind) {
        case ExprKind::Constant: return "const(" + fmt_double(node.value) + ")";
        case ExprKind::Variable: return "x";
        case ExprKind::Sum:
        case ExprKind::Product: {
            std::string out = node.kind == ExprKind::Sum ? "add(" : "mul(";
            for (std::size_t i = 0; i < node.args.size(); ++i) {
                if (i) out += ", ";
                out += to_string(*node.args[i]);
            }
            return out + ")";
        }
        case ExprKind::Quotient:
            return "div(" + to_string(*node.args[0]) + ", " + to_string(*node.args[1]) + ")";
        case ExprKind::Power:
            return "pow(" + to_string(*node.args[0]) + ", " + fmt_double(node.exponent) + ")";
        case ExprKind::Log: return "log(" + to_string(*node.args[0]) + ")";
        case ExprKind::Exp: return "exp(" + to_string(*node.args[0]) + ")";
        case ExprKind::Li: return "li(" + to_string(*node.args[0]) + ")";
        case ExprKind::LogGamma: return "loggamma(" + to_string(*node.args[0]) + ")";
    }
    raise(ErrorKind::Internal, "unreachable expression kind");
}

std::string FunctionExpr::to_string() const {
    std::string out;
    if (shift_ != 0.0) out = "shift=" + fmt_double(shift_) + " ";
    return out + basislab::to_string(*root_);
}

} // namespace basislab
