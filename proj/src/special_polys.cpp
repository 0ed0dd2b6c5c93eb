#include "lommel/special_polys.hpp"

#include <cmath>

#include "lommel/bessel.hpp"
#include "lommel/dd.hpp"
#include "lommel/gamma.hpp"
#include "lommel/lommel.hpp"

namespace lommel {
namespace {

constexpr double kEps = 1e-16;
constexpr double kIntSnap = 1e-8;
constexpr double kAsymGate = 1e-11;
constexpr double kSqrtPi = 1.7724538509055160273;

}  // namespace

// O_n as the finite sum (n/4) sum_j (n-j-1)!/j! (zeta/2)^{2j-n-1}.  The
// classical definition pairs only powers of the parity of n+1; O_0 = 1/zeta
// sits outside the sum form.
Eval neumann_o(int n, LogPoint z) {
    if (n < 0) throw DomainError("neumann_o: order must be >= 0");
    if (n == 0) {
        Eval out;
        out.value = logpoint_pow(z, -1.0);
        out.abs_err_est = 2.0 * kEps * std::abs(out.value);
        out.terms_used = 1;
        out.method = Method::closed_form;
        return out;
    }
    // (zeta/2)^2 and the leading power (zeta/2)^{-n-1}, branch-resolved.
    LogPoint half{z.w - ln2};
    complex q = logpoint_pow(half, 2.0);
    complex t = 0.25 * n * logpoint_pow(half, complex(-(n + 1.0), 0.0));
    double fac = 1.0;
    for (int k = 2; k <= n - 1; ++k) fac *= k;
    t *= fac;  // (n-1)!
    complex acc = 0.0;
    double amax = 0.0;
    int jmax = n / 2;
    for (int j = 0;; ++j) {
        acc += t;
        amax += std::abs(t);
        if (j == jmax) break;
        t *= q / ((j + 1.0) * (n - j - 1.0));
    }
    Eval out;
    out.value = acc;
    out.abs_err_est = 4.0 * kEps * amax;
    out.terms_used = jmax + 1;
    out.method = Method::closed_form;
    return out;
}

// A_{n,nu} = (2^{nu+n}/zeta^{n+1}) sum_{m<=n/2} Gamma(nu+n-m)/m! (zeta/2)^{2m}.
Eval gegenbauer_a(int n, complex nu, LogPoint z) {
    if (n < 0) throw DomainError("gegenbauer_a: order must be >= 0");
    int mmax = n / 2;
    for (int m = 0; m <= mmax; ++m) {
        long k;
        complex arg = nu + complex(n - m, 0.0);
        if (integer_distance(arg, &k) < 1e-12 && k <= 0)
            throw PoleError("gegenbauer_a: Gamma pole at nu+n-m = " + std::to_string(k));
    }
    LogPoint half{z.w - ln2};
    complex q = logpoint_pow(half, 2.0);
    complex pref = std::exp((nu + complex(n, 0.0)) * ln2) * logpoint_pow(z, complex(-(n + 1.0), 0.0));
    complex t = gamma_fn(nu + complex(n, 0.0));
    complex acc = 0.0;
    double amax = 0.0;
    for (int m = 0;; ++m) {
        acc += t;
        amax += std::abs(t);
        if (m == mmax) break;
        t *= q / ((m + 1.0) * (nu + complex(n - m - 1.0, 0.0)));
    }
    Eval out;
    out.value = pref * acc;
    out.abs_err_est = std::abs(pref) * (4.0 * kEps * amax) + 8.0 * kEps * std::abs(out.value);
    out.terms_used = mmax + 1;
    out.method = Method::closed_form;
    return out;
}

// Even n=2p: sum_{m=1}^p (p+m-1)!/(p-m)! (zeta/2)^{-2m};
// odd n=2p+1: sum_{m=0}^p (p+m)!/(p-m)! (zeta/2)^{-2m-1}.
Eval schlafli_s(int n, LogPoint z) {
    if (n < 0) throw DomainError("schlafli_s: order must be >= 0");
    Eval out;
    out.method = Method::closed_form;
    if (n == 0) return out;
    LogPoint half{z.w - ln2};
    complex qinv = logpoint_pow(half, -2.0);
    complex acc = 0.0;
    double amax = 0.0;
    int p = n / 2;
    if (n % 2 == 0) {
        complex t = static_cast<double>(p) * qinv;  // m = 1 term
        for (int m = 1;; ++m) {
            acc += t;
            amax += std::abs(t);
            if (m == p) break;
            t *= (p + m) * (p - m) * qinv;
        }
        out.terms_used = p;
    } else {
        complex t = logpoint_pow(half, -1.0);  // m = 0 term
        for (int m = 0;; ++m) {
            acc += t;
            amax += std::abs(t);
            if (m == p) break;
            t *= (p + m + 1.0) * (p - m) * qinv;
        }
        out.terms_used = p + 1;
    }
    out.value = acc;
    out.abs_err_est = 4.0 * kEps * amax;
    return out;
}

// Ascending series (zeta/2)^{nu+1} sum (-1)^m (zeta^2/4)^m /
// [Gamma(m+3/2) Gamma(nu+m+3/2)], in double-double.  Orders within kIntSnap
// of -n-1/2 collapse to Bessel: H_{-n-1/2} = (-1)^n J_{n+1/2}; the series is
// unusable there because every term before m = n carries a Gamma pole.
Eval struve_h(complex nu, LogPoint z) {
    long nhalf;
    double dist = integer_distance(nu + 0.5, &nhalf);
    if (nhalf <= 0 && dist <= kIntSnap) {
        int n = static_cast<int>(-nhalf);
        Eval j = bessel_j(complex(n + 0.5, 0.0), z);
        if (n % 2 != 0) j.value = -j.value;
        // Off-lattice inputs inside the snap window pick up an O(dist) model error.
        j.abs_err_est += dist * (std::abs(j.value) + 1.0) * (std::abs(z.w) + 2.0);
        return j;
    }

    // Large arguments: H = Y + 2^{1-nu}/(sqrt(pi) Gamma(nu+1/2)) S_{nu,nu},
    // an identity on the whole surface; take it once the descending side of
    // S_{nu,nu} is accurate.
    double r = z.abs_zeta();
    if (r > 6.0 && lommel_asymptotic_floor(nu, nu, r) <= kAsymGate) {
        Eval y = bessel_y(nu, z);
        Eval s = lommel_S(nu, nu, z);
        complex c = std::exp((1.0 - nu) * ln2) * reciprocal_gamma(nu + 0.5) / kSqrtPi;
        Eval out;
        out.value = y.value + c * s.value;
        out.abs_err_est = y.abs_err_est + std::abs(c) * s.abs_err_est +
                          4.0 * kEps * (std::abs(y.value) + std::abs(c * s.value));
        out.terms_used = y.terms_used + s.terms_used;
        out.method = Method::asymptotic;
        return out;
    }

    complex zsq = z.zeta() * z.zeta();
    dd::Cx ratio_base = dd::mul(dd::from(zsq), dd::Real{-0.25, 0.0});
    complex t0 = reciprocal_gamma(complex(1.5, 0.0)) * reciprocal_gamma(nu + 1.5);
    dd::Cx term = dd::from(t0);
    dd::Cx sum{};
    double peak = 0.0;
    int small_run = 0;
    int m = 0;
    const int cap = term_cap();
    for (;; ++m) {
        sum = dd::add(sum, term);
        double tmag = dd::abs_est(term);
        peak = std::max(peak, tmag);
        double smag = dd::abs_est(sum);
        small_run = (tmag < 1e-16 * smag) ? small_run + 1 : 0;
        if (small_run >= 3) break;
        if (m + 1 >= cap)
            throw NonconvergenceError("struve_h: series did not converge in " +
                                      std::to_string(cap) + " terms");
        dd::Cx den = dd::mul(dd::add(dd::from(nu + 1.5), dd::Real{double(m), 0.0}),
                             dd::Real{m + 1.5, 0.0});
        term = dd::div(dd::mul(term, ratio_base), den);
    }
    complex pref = logpoint_pow(LogPoint{z.w - ln2}, nu + 1.0);
    Eval out;
    out.value = pref * dd::to_complex(sum);
    out.abs_err_est = std::abs(pref) * (3.0 * dd::abs_est(term) + peak * 2e-31) +
                      4.0 * kEps * std::abs(out.value);
    out.terms_used = m + 1;
    out.method = Method::series;
    return out;
}

Eval struve_k(complex nu, LogPoint z) {
    Eval h = struve_h(nu, z);
    Eval y = bessel_y(nu, z);
    Eval out;
    out.value = h.value - y.value;
    out.abs_err_est = h.abs_err_est + y.abs_err_est +
                      4.0 * kEps * (std::abs(h.value) + std::abs(y.value));
    out.terms_used = h.terms_used + y.terms_used;
    out.method = h.method;
    return out;
}

}  // namespace lommel
