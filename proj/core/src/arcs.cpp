#include "basislab/arcs.hpp"

#include <cmath>

#include "basislab/errors.hpp"
#include "basislab/eval.hpp"
#include "basislab/jet.hpp"

namespace basislab {

double solve_increasing(const FunctionExpr& f, double target, double lo) {
    if (!(target > 0.0)) raise(ErrorKind::Range, "solve_increasing: target must be positive");
    double a = lo;
    double fa = eval(f, a);
    if (fa > target) raise(ErrorKind::Range, "solve_increasing: no root, f(lo) already above target");
    double b = std::max(2.0 * a, 2.0);
    double fb = eval(f, b);
    int guard = 0;
    while (fb < target) {
        a = b;
        fa = fb;
        b *= 2.0;
        if (++guard > 1024 || !std::isfinite(b))
            raise(ErrorKind::Range, "solve_increasing: target not bracketed");
        fb = eval(f, b);
    }
    if (eval_jet(f, a, 1)[1] <= 0.0 || eval_jet(f, b, 1)[1] <= 0.0)
        raise(ErrorKind::Domain, "solve_increasing: f not increasing on the bracket");
    for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        double mid = 0.5 * (a + b);
        double fm = eval(f, mid);
        if (fm < target) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    (void)fa;
    (void)fb;
    double x = 0.5 * (a + b);
    for (int it = 0; it < 4; ++it) {
        double fx = eval(f, x) - target;
        double dfx = eval_jet(f, x, 1)[1];
        if (dfx == 0.0) break;
        double nx = x - fx / dfx;
        if (nx >= lo && std::isfinite(nx)) x = nx;
    }
    if (std::abs(eval(f, x) - target) > 1e-10 * target)
        raise(ErrorKind::Internal, "solve_increasing: root polish missed the 1e-10 tolerance");
    return x;
}

ArcParams arc_params(const FunctionExpr& f, const DegreeProfile& profile, std::int64_t N, int s) {
    if (s < 1) raise(ErrorKind::Range, "arc_params: s must be >= 1");
    double d = profile.degree();
    if (d < 1.0) raise(ErrorKind::Range, "arc_params: degree must be >= 1");

    ArcParams p;
    p.N = N;
    p.s = s;
    p.d = d;
    p.X = std::pow(static_cast<double>(N), 1.0 / d);
    p.Ns = static_cast<double>(N) / (s + 1);
    p.omega = std::pow(p.X, 0.5 - d);
    p.X0 = solve_increasing(f, p.Ns);
    p.X1 = solve_increasing(f, 2.0 * p.Ns, p.X0);
    if (!(p.X0 < p.X1))
        raise(ErrorKind::Internal, "arc_params: window endpoints out of order");
    return p;
}

} // namespace basislab
