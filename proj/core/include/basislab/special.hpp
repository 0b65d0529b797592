#pragma once

namespace basislab {

// Principal-value logarithmic integral li(x) = pv int_0^x dt/log t, x > 1.
double li_double(double x);

// psi^(m), m >= 0 (m = 0 is digamma); x > 0.
double polygamma(int m, double x);

} // namespace basislab
