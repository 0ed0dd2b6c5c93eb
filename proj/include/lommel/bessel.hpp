#pragma once

#include "lommel/core.hpp"

namespace lommel {

// J_nu and Y_nu of complex order at a branch-resolved argument.
Eval bessel_j(complex nu, LogPoint z);
Eval bessel_y(complex nu, LogPoint z);

// H^{(1)} (kind=1) and H^{(2)} (kind=2).
Eval hankel(int kind, complex nu, LogPoint z);

// Under zeta -> zeta e^{m pi i}:
//   H^{(1)} -> a H^{(1)} + b H^{(2)},   H^{(2)} -> c H^{(1)} + d H^{(2)}
struct HankelCoeffs {
    complex a, b, c, d;
};
HankelCoeffs hankel_continuation_coeffs(int m, complex nu);

// d/dzeta H_0^{(k)}(zeta) = -H_1^{(k)}(zeta)
Eval hankel_order01_derivative(int kind, LogPoint z);

// Ascending series below this radius, large-argument expansion above.
double bessel_switch_radius(complex nu);

}  // namespace lommel
