#pragma once

#include "lommel/core.hpp"

namespace lommel {

// Neumann polynomial O_n(zeta), a polynomial in 1/zeta.
Eval neumann_o(int n, LogPoint z);

// Gegenbauer polynomial A_{n,nu}(zeta).
Eval gegenbauer_a(int n, complex nu, LogPoint z);

// Schlafli polynomial S_n(zeta); S_0 = 0.
Eval schlafli_s(int n, LogPoint z);

// Struve function H_nu(zeta).
Eval struve_h(complex nu, LogPoint z);

// K_nu = H_nu - Y_nu, the particular integral with algebraic decay.
Eval struve_k(complex nu, LogPoint z);

}  // namespace lommel
