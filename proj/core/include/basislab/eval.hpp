#pragma once

#include "basislab/dd.hpp"
#include "basislab/expr.hpp"

namespace basislab {

enum class Precision { Double, Extended };

// Raw tree evaluation, no shift applied.  Domain violations throw
// ErrorKind::Domain (log/li/loggamma arguments, zero denominators).
double eval_node(const ExprNode& node, double x);
Dd eval_node_dd(const ExprNode& node, Dd x);

// f(x + shift); requires x >= 1.
double eval(const FunctionExpr& f, double x, Precision precision = Precision::Double);
Dd eval_dd(const FunctionExpr& f, double x);

} // namespace basislab
