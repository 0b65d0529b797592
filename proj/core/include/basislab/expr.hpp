#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace basislab {

enum class ExprKind {
    Constant,   // c
    Variable,   // x
    Sum,        // add(a, b, ...)
    Product,    // mul(a, b, ...)
    Quotient,   // div(a, b)
    Power,      // pow(a, e) with a fixed real exponent e
    Log,        // log(a)
    Exp,        // exp(a)
    Li,         // li(a), logarithmic integral
    LogGamma,   // loggamma(a)
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    double value = 0.0;     // Constant
    double exponent = 0.0;  // Power
    std::vector<ExprPtr> args;
};

// A function f given as an immutable expression tree plus a shift k0 >= 0;
// every evaluation maps x to x + k0 first, so f is usable on [1, oo) even
// when the bare formula is not (log log x and friends).
class FunctionExpr {
public:
    FunctionExpr() = default;
    FunctionExpr(ExprPtr root, double shift);

    // Parses the prefix text format, e.g.
    //   shift=2 add(mul(3.141592653589793, pow(x, 3)), div(pow(x, 1.4142135623730951), log(log(x))))
    // With no shift attribute the smallest k0 in {0..64} that makes the probe
    // points {1, 2, 10, 1e3, 1e6} evaluate to finite values is chosen.
    static FunctionExpr parse(std::string_view text);

    const ExprNode& root() const { return *root_; }
    ExprPtr root_ptr() const { return root_; }
    double shift() const { return shift_; }
    bool has_value() const { return static_cast<bool>(root_); }

    std::string to_string() const;  // round-trips through parse

private:
    ExprPtr root_;
    double shift_ = 0.0;
};

// Builders for programmatic construction (tests, pilot experiments).
namespace fe {
ExprPtr c(double v);
ExprPtr x();
ExprPtr add(std::vector<ExprPtr> parts);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr mul(std::vector<ExprPtr> parts);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr num, ExprPtr den);
ExprPtr pow(ExprPtr base, double exponent);
ExprPtr log(ExprPtr a);
ExprPtr exp(ExprPtr a);
ExprPtr li(ExprPtr a);
ExprPtr loggamma(ExprPtr a);
} // namespace fe

// Validates arity/exponent finiteness; throws ErrorKind::Config on malformed
// trees (the parser calls this; direct builders may too).
void check_well_formed(const ExprNode& node);

// Smallest integer shift in {0..64} making all probe points finite.
double resolve_shift(const ExprPtr& root);

std::string to_string(const ExprNode& node);

} // namespace basislab
