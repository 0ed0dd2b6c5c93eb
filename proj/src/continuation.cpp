#include "lommel/continuation.hpp"

#include <cmath>

#include "lommel/bessel.hpp"
#include "lommel/gamma.hpp"
#include "lommel/lommel.hpp"
#include "lommel/special_polys.hpp"

namespace lommel {
namespace {

constexpr double kEps = 1e-16;
constexpr double kDegenerateTol = 1e-6;
const complex kI(0.0, 1.0);

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

complex polyval(const std::vector<double>& c, complex x) {
    complex acc = 0.0;
    for (size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
    return acc;
}

double sgn_pow(long k) { return (k % 2 != 0) ? -1.0 : 1.0; }  // (-1)^k

complex k_plus_constant(complex mu, complex nu) {
    return lommel_K(mu, nu) * kI * (1.0 + std::exp(kI * pi * (nu - mu))) *
           std::cos(0.5 * pi * (mu + nu));
}

}  // namespace

complex chebyshev_u(int m, complex nu) {
    if (m == 0) return 0.0;
    if (m < 0) return -chebyshev_u(-m, nu);  // U_{-k} = -U_{k-2}
    if (m == 1) return 1.0;
    complex x = std::cos(pi * nu);
    if (m == 2) return 2.0 * x;
    complex s = std::sin(pi * nu);
    if (std::abs(s) < 1e-4) {
        // sine quotient loses accuracy near integer nu; recurse on x instead
        complex um2 = 1.0, um1 = 2.0 * x;
        for (int k = 2; k < m; ++k) {
            complex u = 2.0 * x * um1 - um2;
            um2 = um1;
            um1 = u;
        }
        return um1;
    }
    return std::sin(static_cast<double>(m) * pi * nu) / s;
}

PQPair continuation_pq(int m, complex mu, complex nu) {
    complex fp = 1.0 + std::exp(-kI * pi * (mu + nu));
    complex fm = 1.0 + std::exp(-kI * pi * (mu - nu));
    if (std::abs(fp) < kDegenerateTol || std::abs(fm) < kDegenerateTol)
        throw DegenerateError(
            "half-turn coefficients degenerate: mu+nu or mu-nu is too close to an odd integer");
    complex d = fp * fm;
    complex emu = std::exp(-kI * pi * mu);
    complex u_m1 = chebyshev_u(m, nu);
    complex u_m = chebyshev_u(m + 1, nu);
    complex u_m2 = chebyshev_u(m - 1, nu);
    complex em1 = std::exp(-kI * pi * mu * static_cast<double>(m + 1));
    complex em0 = std::exp(-kI * pi * mu * static_cast<double>(m));
    complex p = (u_m1 + emu * u_m + sgn_pow(m + 1) * em1) / d;
    complex q = (u_m2 + emu * u_m1 + sgn_pow(m) * em0) / d;
    return {m, p, q, k_plus_constant(mu, nu)};
}

PQPair continuation_pq_recursive(int m, complex mu, complex nu) {
    if (m == 0) return {0, 0.0, 0.0, k_plus_constant(mu, nu)};
    complex emu = std::exp(-kI * pi * mu);
    if (m > 0) {
        complex p = 0.0, q = 0.0, w = 1.0;
        for (int j = 0; j <= m; ++j) {
            p += w * chebyshev_u(m - j, nu);           // U_{m-j-1}
            if (j < m) q += w * chebyshev_u(m - j - 1, nu);  // U_{m-j-2}
            w *= -emu;
        }
        return {m, p, q, k_plus_constant(mu, nu)};
    }
    PQPair rev = continuation_pq_recursive(-m, mu, nu);
    complex f = sgn_pow(m + 1) * std::exp(-kI * pi * mu * static_cast<double>(m));
    complex u_m = chebyshev_u(m + 1, nu);   // U_m
    complex u_m1 = chebyshev_u(m, nu);      // U_{m-1}
    complex u_mm = chebyshev_u(1 - m, nu);  // U_{-m}
    complex p = f * (rev.p * u_m - rev.q * u_m1);
    complex q = f * (rev.p * u_m1 + rev.q * u_mm);
    return {m, p, q, rev.k_plus};
}

Eval continue_S(complex mu, complex nu, int m, LogPoint z) {
    LommelParams prm = classify_lommel(mu, nu);
    if (prm.regime == Regime::singular)
        return continue_S_singular(prm.nu, prm.p, m, z);
    Eval s = lommel_S(mu, nu, z);
    complex rot = sgn_pow(m) * std::exp(-kI * pi * mu * static_cast<double>(m));
    if (prm.regime == Regime::terminating) {
        // K_+ = 0: the shift is a pure rotation
        return {rot * s.value, std::abs(rot) * s.abs_err_est, s.terms_used,
                Method::continuation};
    }
    PQPair pq = continuation_pq(m, mu, nu);
    Eval h1 = hankel(1, nu, z);
    Eval h2 = hankel(2, nu, z);
    complex qe = std::exp(-kI * pi * nu) * pq.q;
    complex v = rot * s.value + pq.k_plus * (pq.p * h1.value + qe * h2.value);
    double err = std::abs(rot) * s.abs_err_est +
                 std::abs(pq.k_plus) * (std::abs(pq.p) * h1.abs_err_est +
                                        std::abs(qe) * h2.abs_err_est) +
                 kEps * (std::abs(rot * s.value) +
                         std::abs(pq.k_plus) * (std::abs(pq.p * h1.value) +
                                                std::abs(qe * h2.value)));
    return {v, err, s.terms_used + h1.terms_used + h2.terms_used,
            Method::continuation};
}

SingularK singular_k_fractional(complex nu, int m) {
    complex common = pi * std::exp((nu - 2.0) * ln2) * kI *
                     std::exp(-kI * pi * nu * static_cast<double>(m)) * gamma_fn(nu);
    complex u = chebyshev_u(m, nu);
    complex dm(static_cast<double>(m), 0.0);
    complex kp = common * (u * std::exp(kI * pi * nu * static_cast<double>(m + 1)) - dm);
    complex km = common * (u * std::exp(kI * pi * nu * static_cast<double>(m - 1)) - dm);
    return {kp, km};
}

SingularK singular_k_zero(int m) {
    double mm = m;
    return {complex(-mm * pi * pi * (mm + 1.0) / 4.0, 0.0),
            complex(-mm * pi * pi * (mm - 1.0) / 4.0, 0.0)};
}

PolySplit poly_branch_split(const std::vector<double>& poly, int m) {
    PolySplit out;
    out.delta = (m % 2 != 0) ? 2 : 0;
    out.hat.assign(poly.size(), 0.0);
    out.bar = poly;
    for (size_t j = 1; j < poly.size(); j += 2) {
        out.hat[j] = poly[j];
        out.bar[j] -= out.delta * poly[j];
    }
    return out;
}

Eval continue_S_singular(complex nu, int p, int m, LogPoint z) {
    if (p < 0) throw DomainError("singular family index p must be >= 0");
    Eval s = lommel_S(nu - (2.0 * p + 1.0), nu, z);

    long n = 0;
    bool is_int = integer_distance(nu, &n) <= 1e-8;
    if (!is_int) {
        SingularK k = singular_k_fractional(nu, m);
        complex scale = sgn_pow(p) / (std::pow(4.0, p) * factorial(p) *
                                      pochhammer(1.0 - nu, p));
        Eval h1 = hankel(1, nu, z);
        Eval h2 = hankel(2, nu, z);
        complex rot = std::exp(-kI * pi * nu * static_cast<double>(m));
        complex mix = scale * (k.k_plus * h1.value + k.k_minus * h2.value);
        complex v = rot * s.value + mix;
        double err = std::abs(rot) * s.abs_err_est +
                     std::abs(scale) * (std::abs(k.k_plus) * h1.abs_err_est +
                                        std::abs(k.k_minus) * h2.abs_err_est) +
                     kEps * (std::abs(rot * s.value) + std::abs(mix));
        return {v, err, s.terms_used + h1.terms_used + h2.terms_used,
                Method::continuation};
    }
    if (n > 0)
        throw DomainError("singular family needs a nonpositive integer nu");

    int n0 = static_cast<int>(-n);
    SingularK kz = singular_k_zero(m);
    Eval h10 = hankel(1, 0.0, z);
    Eval h20 = hankel(2, 0.0, z);
    complex hank0 = kz.k_plus * h10.value + kz.k_minus * h20.value;
    double hank0_err = std::abs(kz.k_plus) * h10.abs_err_est +
                       std::abs(kz.k_minus) * h20.abs_err_est;

    if (n0 == 0) {
        complex scale = sgn_pow(p) / (std::pow(4.0, p) * factorial(p) * factorial(p));
        complex v = s.value + scale * hank0;
        double err = s.abs_err_est + std::abs(scale) * hank0_err +
                     kEps * (std::abs(s.value) + std::abs(scale * hank0));
        return {v, err, s.terms_used + h10.terms_used + h20.terms_used,
                Method::continuation};
    }

    AbcPolys abc = abc_polys(n0);
    PolySplit spa = poly_branch_split(abc.a, m);
    PolySplit spb = poly_branch_split(abc.b, m);
    PolySplit spc = poly_branch_split(abc.c, m);
    Eval s10 = lommel_S_minus1_0(z);
    Eval s10d = lommel_S_minus1_0_deriv(z);
    Eval h11 = hankel(1, 1.0, z);
    Eval h21 = hankel(2, 1.0, z);
    complex zeta = z.zeta();
    complex hank1 = kz.k_plus * h11.value + kz.k_minus * h21.value;
    double hank1_err = std::abs(kz.k_plus) * h11.abs_err_est +
                       std::abs(kz.k_minus) * h21.abs_err_est;

    complex hat = polyval(spa.hat, zeta) + polyval(spb.hat, zeta) * s10.value +
                  zeta * polyval(spc.hat, zeta) * s10d.value;
    complex inner = -static_cast<double>(spa.delta) * hat +
                    polyval(spb.bar, zeta) * hank0 -
                    zeta * polyval(spc.bar, zeta) * hank1;
    complex pref = sgn_pow(static_cast<long>(m + 1) * n0 + p) *
                   logpoint_pow(z, complex(-n0, 0.0)) /
                   (std::pow(2.0, 2 * p + n0) * factorial(n0) * factorial(p) *
                    pochhammer(complex(1.0 + n0, 0.0), p));
    double rot = sgn_pow(static_cast<long>(m) * n0);
    complex v = rot * s.value + pref * inner;
    double inner_err =
        static_cast<double>(spa.delta) *
            (std::abs(polyval(spb.hat, zeta)) * s10.abs_err_est +
             std::abs(zeta * polyval(spc.hat, zeta)) * s10d.abs_err_est) +
        std::abs(polyval(spb.bar, zeta)) * hank0_err +
        std::abs(zeta * polyval(spc.bar, zeta)) * hank1_err +
        kEps * (std::abs(hat) * spa.delta + std::abs(inner));
    double err = s.abs_err_est + std::abs(pref) * inner_err +
                 kEps * (std::abs(s.value) + std::abs(pref * inner));
    return {v, err,
            s.terms_used + s10.terms_used + h10.terms_used + h11.terms_used,
            Method::continuation};
}

Eval struve_continuation(complex nu, int m, LogPoint z) {
    Eval h = struve_h(nu, z);
    complex rot = sgn_pow(m) * std::exp(-kI * pi * nu * static_cast<double>(m));
    return {rot * h.value, std::abs(rot) * h.abs_err_est + kEps * std::abs(rot * h.value),
            h.terms_used, Method::continuation};
}

}  // namespace lommel
