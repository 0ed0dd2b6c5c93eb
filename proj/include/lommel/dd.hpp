#pragma once

#include <cmath>
#include <complex>

// Double-double arithmetic (~31 significant digits).  Used internally to sum
// ascending series whose terms grow to exp(|zeta|) before cancelling, and by
// the test oracles.  Requires round-to-nearest IEEE doubles and a real fma.

namespace lommel::dd {

struct Real {
    double hi = 0.0;
    double lo = 0.0;
};

inline Real quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline Real two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline Real two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline Real add(Real a, Real b) {
    Real s = two_sum(a.hi, b.hi);
    Real t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline Real neg(Real a) { return {-a.hi, -a.lo}; }
inline Real sub(Real a, Real b) { return add(a, neg(b)); }

inline Real mul(Real a, Real b) {
    Real p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline Real div(Real a, Real b) {
    double q1 = a.hi / b.hi;
    Real r = sub(a, mul({q1, 0.0}, b));
    double q2 = r.hi / b.hi;
    r = sub(r, mul({q2, 0.0}, b));
    double q3 = r.hi / b.hi;
    Real q = quick_two_sum(q1, q2);
    return add(q, {q3, 0.0});
}

inline Real from(double x) { return {x, 0.0}; }
inline double to_double(Real a) { return a.hi + a.lo; }
inline double abs_est(Real a) { return std::abs(a.hi); }

struct Cx {
    Real re{};
    Real im{};
};

inline Cx from(std::complex<double> z) { return {from(z.real()), from(z.imag())}; }
inline std::complex<double> to_complex(Cx z) { return {to_double(z.re), to_double(z.im)}; }

inline Cx add(Cx a, Cx b) { return {add(a.re, b.re), add(a.im, b.im)}; }
inline Cx sub(Cx a, Cx b) { return {sub(a.re, b.re), sub(a.im, b.im)}; }

inline Cx mul(Cx a, Cx b) {
    return {sub(mul(a.re, b.re), mul(a.im, b.im)),
            add(mul(a.re, b.im), mul(a.im, b.re))};
}

inline Cx mul(Cx a, Real s) { return {mul(a.re, s), mul(a.im, s)}; }

inline Cx div(Cx a, Cx b) {
    Real n = add(mul(b.re, b.re), mul(b.im, b.im));
    Cx num = mul(a, Cx{b.re, neg(b.im)});
    return {div(num.re, n), div(num.im, n)};
}

inline Cx div(Cx a, Real s) { return {div(a.re, s), div(a.im, s)}; }

inline double abs_est(Cx a) { return std::hypot(a.re.hi, a.im.hi); }

}  // namespace lommel::dd
