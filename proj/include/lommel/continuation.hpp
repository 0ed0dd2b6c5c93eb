#pragma once

#include <vector>

#include "lommel/core.hpp"

namespace lommel {

// chebyshev_u(m, nu) = U_{m-1}(cos nu pi) = sin(m nu pi) / sin(nu pi),
// valid for every integer m (U_{-1} = 0, U_{-m} = -U_{m-2}).  Near-integer nu
// is handled by the three-term recurrence instead of the sine quotient.
complex chebyshev_u(int m, complex nu);

// Coefficients of the m-half-turn law for generic parameters:
//   S(zeta e^{-m pi i}) = (-1)^m e^{-m mu pi i} S(zeta)
//                       + k_plus [ p H^{(1)}(zeta) + e^{-nu pi i} q H^{(2)}(zeta) ]
struct PQPair {
    int m = 0;
    complex p, q;
    complex k_plus;
};
PQPair continuation_pq(int m, complex mu, complex nu);
// Same coefficients from the recursive sum/bracket forms; used to cross-check
// the closed forms.
PQPair continuation_pq_recursive(int m, complex mu, complex nu);

Eval continue_S(complex mu, complex nu, int m, LogPoint z);

// Hankel-side coefficients of the singular half-turn laws.
struct SingularK {
    complex k_plus, k_minus;
};
// Case of fractional nu (weights carry Gamma(nu)):
//   S_{nu-1,nu}(zeta e^{-m pi i}) = e^{-m nu pi i} S_{nu-1,nu}(zeta)
//                                 + k_plus H^{(1)}_nu + k_minus H^{(2)}_nu
SingularK singular_k_fractional(complex nu, int m);
// Case nu = 0:  S_{-1,0}(zeta e^{-m pi i}) = S_{-1,0}(zeta)
//                                 + k_plus H^{(1)}_0 + k_minus H^{(2)}_0
SingularK singular_k_zero(int m);

// Split of a polynomial under zeta -> zeta e^{-m pi i}: odd powers flip sign
// on odd m.  bar = poly - delta * hat, with hat the odd-power part and
// delta = 1 + (-1)^{m-1}.
struct PolySplit {
    std::vector<double> hat, bar;
    int delta = 0;
};
PolySplit poly_branch_split(const std::vector<double>& poly, int m);

// S_{nu-2p-1,nu}(zeta e^{-m pi i}) for the singular families.
Eval continue_S_singular(complex nu, int p, int m, LogPoint z);

// Struve H_nu(zeta e^{-m pi i}) = (-1)^m e^{-m nu pi i} H_nu(zeta).
Eval struve_continuation(complex nu, int m, LogPoint z);

}  // namespace lommel
