#include "basislab/special.hpp"

#include <cmath>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_psi.h>

#include "basislab/errors.hpp"

namespace basislab {

// li(x) = Ei(log x) = gamma + log(log x) + sum_{n>=1} y^n/(n*n!), y = log x.
// For x > 1 every term is positive, so the sum is cancellation-free.
double li_double(double x) {
    if (x <= 1.0) raise(ErrorKind::Domain, "li: argument <= 1");
    constexpr double kGamma = 0.5772156649015328606;
    double y = std::log(x);
    double sum = kGamma + std::log(y);
    double term = 1.0;
    for (int n = 1; n <= 200; ++n) {
        term *= y / n;
        double add = term / n;
        sum += add;
        if (n > y && add < 1e-18 * (std::abs(sum) + 1.0)) break;
    }
    return sum;
}

namespace {
struct GslHandlerGuard {
    GslHandlerGuard() { gsl_set_error_handler_off(); }
};
} // namespace

double polygamma(int m, double x) {
    static GslHandlerGuard guard;
    if (x <= 0.0) raise(ErrorKind::Domain, "polygamma: argument <= 0");
    gsl_sf_result r;
    int status = m == 0 ? gsl_sf_psi_e(x, &r) : gsl_sf_psi_n_e(m, x, &r);
    if (status != GSL_SUCCESS)
        raise(ErrorKind::Domain, "polygamma: gsl evaluation failed");
    return r.val;
}

} // namespace basislab
