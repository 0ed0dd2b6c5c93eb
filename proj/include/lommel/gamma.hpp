#pragma once

#include "lommel/core.hpp"

namespace lommel {

// Principal log Gamma: exp(log_gamma(z)) == Gamma(z), analytic off the cut
// along the nonpositive real axis.  Throws PoleError within 1e-12 of a
// nonpositive integer.
complex log_gamma(complex z);

// Gamma itself; 1/Gamma returns 0 at poles instead of throwing.
complex gamma_fn(complex z);
complex reciprocal_gamma(complex z);

// psi(z) and psi'(z).
complex digamma(complex z);
complex trigamma(complex z);

// (a)_n = a (a+1) ... (a+n-1), n >= 0.
complex pochhammer(complex a, int n);

}  // namespace lommel
