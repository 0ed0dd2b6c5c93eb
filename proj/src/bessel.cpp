#include "lommel/bessel.hpp"

#include <cmath>

#include "lommel/continuation.hpp"
#include "lommel/dd.hpp"
#include "lommel/gamma.hpp"

namespace lommel {
namespace {

constexpr double kIntSnap = 1e-8;
constexpr double kIntBand = 1e-4;
constexpr double kEps = 1e-16;

struct DdEval {
    dd::Cx value{};
    double err = 0.0;   // absolute, on to_complex(value)
    int terms = 0;
};

// sum_{k>=0} (-1)^k (zeta/2)^{2k} / (k! (nu+1)_k), compensated.
DdEval j_core(complex nu, LogPoint z) {
    dd::Cx ratio_base = dd::from(std::exp(2.0 * z.w));
    ratio_base = dd::mul(ratio_base, dd::from(-0.25));
    dd::Cx term = dd::from(complex(1.0, 0.0));
    dd::Cx sum = term;
    double peak = 1.0;
    int small_streak = 0;
    const int cap = term_cap();
    for (int k = 1; k <= cap; ++k) {
        dd::Cx den = dd::from(static_cast<double>(k) * (nu + static_cast<double>(k)));
        term = dd::div(dd::mul(term, ratio_base), den);
        sum = dd::add(sum, term);
        double tmag = dd::abs_est(term);
        double smag = dd::abs_est(sum);
        peak = std::max(peak, smag);
        if (tmag < 1e-16 * smag) {
            if (++small_streak == 3)
                return {sum, 3.0 * tmag + peak * 2e-31, k};
        } else {
            small_streak = 0;
        }
    }
    throw NonconvergenceError("bessel series did not settle within " +
                              std::to_string(cap) + " terms");
}

// J as prefactor * core in dd; prefactor kept separately in double.
struct DdBessel {
    dd::Cx value{};
    double err = 0.0;
    int terms = 0;
};

DdBessel j_series_dd(complex nu, LogPoint z);

DdBessel j_series_direct(complex nu, LogPoint z) {
    complex pref = std::exp(nu * (z.w - ln2) - log_gamma(nu + 1.0));
    DdEval core = j_core(nu, z);
    dd::Cx v = dd::mul(core.value, dd::from(pref));
    double mag = dd::abs_est(v);
    return {v, core.err * std::abs(pref) + kEps * mag, core.terms};
}

DdBessel j_series_dd(complex nu, LogPoint z) {
    long n = 0;
    double d = integer_distance(nu, &n);
    if (d <= kIntBand && n < 0) {
        // J_{-n} = (-1)^n J_n
        DdBessel e = j_series_direct(complex(static_cast<double>(-n), 0.0), z);
        if (n % 2 != 0) e.value = {dd::neg(e.value.re), dd::neg(e.value.im)};
        if (d > kIntSnap)
            e.err += d * (std::abs(z.w) + 2.0) * (dd::abs_est(e.value) + 1.0);
        return e;
    }
    if (d <= kIntBand && d > kIntSnap) {
        DdBessel e = j_series_direct(complex(static_cast<double>(n), 0.0), z);
        e.err += d * (std::abs(z.w) + 2.0) * (dd::abs_est(e.value) + 1.0);
        return e;
    }
    if (d <= kIntSnap && n >= 0)
        return j_series_direct(complex(static_cast<double>(n), 0.0), z);
    return j_series_direct(nu, z);
}

// Y_n for integer n >= 0 through the logarithmic series:
// pi Y_n = 2 J_n log(zeta/2) - sum_{k<n} (n-k-1)!/k! (zeta/2)^{2k-n}
//        - sum_k (-1)^k [psi(k+1)+psi(n+k+1)] (zeta/2)^{n+2k} / (k! (n+k)!)
DdBessel y_integer_dd(int n, LogPoint z) {
    const complex log_half_arg = z.w - ln2;
    DdBessel jn = j_series_dd(complex(n, 0.0), z);

    dd::Cx acc = dd::mul(jn.value, dd::from(2.0 * log_half_arg));
    double err = 2.0 * std::abs(log_half_arg) * jn.err;

    // finite part
    {
        double fact = 1.0;  // (n-1)!
        for (int k = 1; k < n; ++k) fact *= k;
        double kfact = 1.0;
        for (int k = 0; k < n; ++k) {
            complex t = fact / kfact * std::exp(static_cast<double>(2 * k - n) * log_half_arg);
            acc = dd::sub(acc, dd::from(t));
            err += kEps * std::abs(t);
            if (k + 1 < n) {
                fact /= (n - 1 - k);
                kfact *= (k + 1);
            }
        }
    }

    // logarithm-free tail, compensated
    {
        double nfact = 1.0;
        for (int k = 2; k <= n; ++k) nfact *= k;
        complex b0 = std::exp(static_cast<double>(n) * log_half_arg) / nfact;
        dd::Cx ratio = dd::mul(dd::from(std::exp(2.0 * z.w)), dd::from(-0.25));
        dd::Cx rel = dd::from(complex(1.0, 0.0));
        dd::Cx tail{};
        double psi1 = -0.57721566490153286061;  // psi(1)
        double psi2 = psi1;
        for (int k = 1; k <= n; ++k) psi2 += 1.0 / k;  // psi(n+1)
        double peak = 0.0;
        int small_streak = 0;
        const int cap = term_cap();
        int k = 0;
        for (;; ++k) {
            dd::Cx t = dd::mul(rel, dd::from(psi1 + psi2));
            tail = dd::add(tail, t);
            double tmag = dd::abs_est(t);
            double smag = std::max(dd::abs_est(tail), 1e-300);
            peak = std::max(peak, smag);
            if (tmag < 1e-16 * smag) {
                if (++small_streak == 3) break;
            } else {
                small_streak = 0;
            }
            if (k >= cap)
                throw NonconvergenceError("integer-order Y series did not settle");
            psi1 += 1.0 / (k + 1);
            psi2 += 1.0 / (n + k + 1);
            rel = dd::div(dd::mul(rel, ratio),
                          dd::from(static_cast<double>(k + 1) * (n + k + 1)));
        }
        dd::Cx tl = dd::mul(tail, dd::from(b0));
        acc = dd::sub(acc, tl);
        err += (kEps * dd::abs_est(tl) + peak * std::abs(b0) * 2e-31);
        jn.terms += k;
    }

    acc = dd::mul(acc, dd::from(1.0 / pi));
    return {acc, err / pi + kEps * dd::abs_est(acc), jn.terms};
}

DdBessel y_series_dd(complex nu, LogPoint z) {
    long n = 0;
    double d = integer_distance(nu, &n);
    if (d <= kIntBand) {
        int an = static_cast<int>(std::llabs(n));
        DdBessel e = y_integer_dd(an, z);
        if (n < 0 && n % 2 != 0) e.value = {dd::neg(e.value.re), dd::neg(e.value.im)};
        if (d > kIntSnap)
            e.err += d * (std::abs(z.w) + 2.0) * (dd::abs_est(e.value) + 1.0);
        return e;
    }
    // Y = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi)
    DdBessel jp = j_series_dd(nu, z);
    DdBessel jm = j_series_dd(-nu, z);
    complex c = std::cos(nu * pi), s = std::sin(nu * pi);
    dd::Cx num = dd::sub(dd::mul(jp.value, dd::from(c)), jm.value);
    dd::Cx val = dd::div(num, dd::from(s));
    double amp = 1.0 / std::abs(s);
    double err = (jp.err * std::abs(c) + jm.err) * amp +
                 kEps * (dd::abs_est(jp.value) * std::abs(c) + dd::abs_est(jm.value)) * amp;
    return {val, err, jp.terms + jm.terms};
}

// Large-argument expansion of H^{(k)} on the principal branch:
//   (pi zeta/2)^{1/2} H^{(1)} = e^{ i(zeta - nu pi/2 - pi/4)} [sum (1/2-nu)_k (1/2+nu)_k / (k! ( 2 i zeta)^k)]
//   (pi zeta/2)^{1/2} H^{(2)} = e^{-i(zeta - nu pi/2 - pi/4)} [sum (1/2-nu)_k (1/2+nu)_k / (k! (-2 i zeta)^k)]
Eval hankel_asym_principal(int kind, complex nu, LogPoint z0) {
    if (std::abs(z0.w.imag()) >= pi)
        throw DomainError("hankel asymptotics requested outside |arg zeta| < pi");
    const complex i(0.0, 1.0);
    complex zeta = z0.zeta();
    complex den = (kind == 1) ? 2.0 * i * zeta : -2.0 * i * zeta;

    complex term = 1.0, sum = 1.0;
    double best = 1.0;
    int k = 0;
    for (k = 0; k < 200; ++k) {
        double kh = k + 0.5;
        complex next = term * (kh * kh - nu * nu) / ((k + 1.0) * den);
        if (std::abs(next) >= std::abs(term)) break;          // optimal truncation
        term = next;
        sum += term;
        best = std::abs(term);
        if (best < 1e-17 * std::abs(sum)) break;
    }

    complex phase = zeta - nu * (pi / 2) - pi / 4;
    complex expo = -0.5 * (std::log(pi / 2) + z0.w) + ((kind == 1) ? i * phase : -i * phase);
    if (expo.real() > exp_overflow_bound)
        throw OverflowError("hankel: value exceeds double range");
    complex pref = std::exp(expo);
    complex value = pref * sum;
    double err = std::abs(pref) * (best + kEps * std::abs(sum));
    return {value, err, k + 1, Method::asymptotic};
}

struct Reduced {
    LogPoint z0;
    int m;  // w = z0.w + i m pi
};

Reduced reduce_halfturns(LogPoint z) {
    double t = z.w.imag() / pi;
    int m = static_cast<int>(std::lround(t));
    return {LogPoint{z.w - complex(0.0, m * pi)}, m};
}

Eval to_eval(const DdBessel& e, Method method) {
    return {dd::to_complex(e.value), e.err, e.terms, method};
}

// Predicted relative error of the two routes, used to pick the H dispatch.
double series_cancellation(LogPoint z) {
    double im = std::abs(std::imag(z.zeta()));
    return 5e-16 * std::exp(std::min(2.0 * im, 700.0));
}
double asym_floor(double abszeta) {
    return std::sqrt(4.0 * pi * abszeta) * std::exp(-2.0 * abszeta) + 1e-16;
}

}  // namespace

double bessel_switch_radius(complex nu) {
    return std::max(18.0, 0.5 * std::norm(nu));
}

Eval bessel_j(complex nu, LogPoint z) {
    if (z.abs_zeta() <= bessel_switch_radius(nu))
        return to_eval(j_series_dd(nu, z), Method::series);
    auto [z0, m] = reduce_halfturns(z);
    Eval h1 = hankel_asym_principal(1, nu, z0);
    Eval h2 = hankel_asym_principal(2, nu, z0);
    // J(zeta0 e^{m pi i}) = e^{m nu pi i} J(zeta0)
    complex rot = std::exp(complex(0.0, 1.0) * static_cast<double>(m) * nu * pi);
    complex value = rot * 0.5 * (h1.value + h2.value);
    double err = std::abs(rot) * 0.5 * (h1.abs_err_est + h2.abs_err_est);
    return {value, err + kEps * std::abs(value), h1.terms_used + h2.terms_used,
            Method::asymptotic};
}

Eval bessel_y(complex nu, LogPoint z) {
    if (z.abs_zeta() <= bessel_switch_radius(nu))
        return to_eval(y_series_dd(nu, z), Method::series);
    auto [z0, m] = reduce_halfturns(z);
    Eval h1 = hankel_asym_principal(1, nu, z0);
    Eval h2 = hankel_asym_principal(2, nu, z0);
    HankelCoeffs c = hankel_continuation_coeffs(m, nu);
    complex h1w = c.a * h1.value + c.b * h2.value;
    complex h2w = c.c * h1.value + c.d * h2.value;
    complex value = (h1w - h2w) / complex(0.0, 2.0);
    double cmag = std::max({std::abs(c.a), std::abs(c.b), std::abs(c.c), std::abs(c.d)});
    double err = cmag * (h1.abs_err_est + h2.abs_err_est) +
                 kEps * cmag * (std::abs(h1.value) + std::abs(h2.value));
    return {value, 0.5 * err + kEps * std::abs(value),
            h1.terms_used + h2.terms_used, Method::asymptotic};
}

Eval hankel(int kind, complex nu, LogPoint z) {
    if (kind != 1 && kind != 2)
        throw DomainError("hankel: kind must be 1 or 2");
    double r = z.abs_zeta();
    bool series_ok = r <= bessel_switch_radius(nu) &&
                     series_cancellation(z) <= std::max(asym_floor(r), 1e-14);
    if (series_ok) {
        DdBessel j = j_series_dd(nu, z);
        DdBessel y = y_series_dd(nu, z);
        dd::Cx iy{dd::neg(y.value.im), y.value.re};
        dd::Cx v = (kind == 1) ? dd::add(j.value, iy) : dd::sub(j.value, iy);
        double cancel = kEps * (dd::abs_est(j.value) + dd::abs_est(y.value));
        return {dd::to_complex(v), j.err + y.err + cancel, j.terms + y.terms,
                Method::series};
    }
    auto [z0, m] = reduce_halfturns(z);
    Eval h1 = hankel_asym_principal(1, nu, z0);
    Eval h2 = hankel_asym_principal(2, nu, z0);
    HankelCoeffs c = hankel_continuation_coeffs(m, nu);
    complex x = (kind == 1) ? c.a : c.c;
    complex y = (kind == 1) ? c.b : c.d;
    complex value = x * h1.value + y * h2.value;
    double err = std::abs(x) * h1.abs_err_est + std::abs(y) * h2.abs_err_est +
                 kEps * (std::abs(x) * std::abs(h1.value) + std::abs(y) * std::abs(h2.value));
    return {value, err, h1.terms_used + h2.terms_used, Method::asymptotic};
}

HankelCoeffs hankel_continuation_coeffs(int m, complex nu) {
    // H1(zeta e^{m pi i}) = U_{-m} H1 - e^{-nu pi i} U_{m-1} H2
    // H2(zeta e^{m pi i}) = e^{nu pi i} U_{m-1} H1 + U_m H2
    // with U_k = U_k(cos nu pi); chebyshev_u(m, nu) = U_{m-1}(cos nu pi).
    const complex i(0.0, 1.0);
    complex um1 = chebyshev_u(m, nu);          // U_{m-1}
    complex um = chebyshev_u(m + 1, nu);       // U_m
    complex umm = chebyshev_u(1 - m, nu);      // U_{-m}
    return {umm, -std::exp(-i * nu * pi) * um1, std::exp(i * nu * pi) * um1, um};
}

Eval hankel_order01_derivative(int kind, LogPoint z) {
    Eval e = hankel(kind, complex(1.0, 0.0), z);
    e.value = -e.value;
    return e;
}

}  // namespace lommel
