#pragma once

#include <vector>

#include "lommel/core.hpp"

namespace lommel {

// Parameter regimes of S_{mu,nu}, decided within 1e-10:
//   terminating: mu+nu or mu-nu = 2p+1, p >= 0   (closed form, all branches)
//   singular:    mu+nu or mu-nu = -(2p+1)        (s undefined, S via limits)
//   generic:     everything else
enum class Regime { generic, terminating, singular };

struct LommelParams {
    complex mu, nu;  // nu is the sign chosen so mu - nu hits the odd integer
    Regime regime = Regime::generic;
    int p = -1;  // index of the matching odd integer, -1 when generic
};

LommelParams classify_lommel(complex mu, complex nu);

// Ascending series s_{mu,nu}; throws SingularParamsError whenever mu+nu or
// mu-nu is an odd negative integer (a series denominator vanishes).
Eval lommel_small_s(complex mu, complex nu, LogPoint z);

// K = 2^{mu-1} Gamma((mu-nu+1)/2) Gamma((mu+nu+1)/2)
complex lommel_K(complex mu, complex nu);

// S_{mu,nu} on any branch; dispatches on regime, radius and branch.
Eval lommel_S(complex mu, complex nu, LogPoint z);

// Closed form when mu+nu or mu-nu = 2p+1:
//   S = zeta^{mu-1} sum_{k=0}^{p} (-1)^k c_k zeta^{-2k},
//   c_0 = 1, c_k = prod_{j=1}^{k} [(mu-2j+1)^2 - nu^2]
struct TerminatingLommel {
    complex mu, nu;
    int p = 0;
    std::vector<complex> c;
};
TerminatingLommel terminating_lommel(complex mu, complex nu);
Eval terminating_eval(const TerminatingLommel& t, LogPoint z);

// S_{mu+2,nu} = zeta^{mu+1} - [(mu+1)^2 - nu^2] S_{mu,nu}
Eval lommel_recurrence_step(complex mu, complex nu, LogPoint z, const Eval& s_mu);

// Descending expansion zeta^{mu-1} sum (-1)^k c_k zeta^{-2k}, truncated at the
// smallest term; the first omitted term is the error surrogate.  Requires
// |arg zeta| < pi.
Eval lommel_asymptotic(complex mu, complex nu, LogPoint z);

// Smallest relative term of the descending expansion at radius r, i.e. the
// best accuracy it can reach there.
double lommel_asymptotic_floor(complex mu, complex nu, double r);

// Singular-family members, valid on every branch.
Eval lommel_S_nu_minus1(complex nu, LogPoint z);  // S_{nu-1,nu}, -nu not in N0
Eval lommel_S_minus1_0(LogPoint z);               // S_{-1,0}
Eval lommel_S_minus1_0_deriv(LogPoint z);         // d/dzeta S_{-1,0}

// Polynomials of the reduction S_{-n-1,-n} = (-1)^n zeta^{-n} / (2^n n!) *
// [A_n + B_n S_{-1,0} + zeta C_n S'_{-1,0}]; coefficients ascending in zeta.
struct AbcPolys {
    std::vector<double> a, b, c;
};
AbcPolys abc_polys(int n);

// S_{nu-2p-1,nu} for p >= 0; nu may be fractional, zero or a negative
// integer (pass the sign-adjusted nu from classify_lommel).
Eval lommel_S_singular(complex nu, int p, LogPoint z);

}  // namespace lommel
