#include "lommel/lommel.hpp"

#include <cmath>
#include <utility>

#include "lommel/bessel.hpp"
#include "lommel/continuation.hpp"
#include "lommel/dd.hpp"
#include "lommel/gamma.hpp"

namespace lommel {
namespace {

constexpr double kRegimeTol = 1e-10;
constexpr double kIntSnap = 1e-8;
constexpr double kEps = 1e-16;
constexpr double kAsymGate = 1e-11;  // descending route wins below this floor

// x == 2p+1 for some p >= 0, within kRegimeTol?
bool odd_positive(complex x, int* p) {
    if (std::abs(x.imag()) > kRegimeTol) return false;
    long k = std::lround((x.real() - 1.0) / 2.0);
    if (k < 0) return false;
    if (std::abs(x - complex(2.0 * k + 1.0, 0.0)) > kRegimeTol) return false;
    *p = static_cast<int>(k);
    return true;
}

bool odd_negative(complex x, int* p) { return odd_positive(-x, p); }

complex polyval(const std::vector<double>& c, complex x) {
    complex acc = 0.0;
    for (size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
    return acc;
}

double polyval_abs(const std::vector<double>& c, double r) {
    double acc = 0.0, pw = 1.0;
    for (double cj : c) {
        acc += std::abs(cj) * pw;
        pw *= r;
    }
    return acc;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// S = s + K [ J_nu sin((mu-nu) pi/2) - Y_nu cos((mu-nu) pi/2) ]
Eval generic_series(complex mu, complex nu, LogPoint z) {
    Eval s = lommel_small_s(mu, nu, z);
    complex K = lommel_K(mu, nu);
    complex half = 0.5 * (mu - nu) * pi;
    complex sn = std::sin(half), cs = std::cos(half);
    Eval j = bessel_j(nu, z);
    Eval y = bessel_y(nu, z);
    complex mix = K * (sn * j.value - cs * y.value);
    complex v = s.value + mix;
    double err = s.abs_err_est +
                 std::abs(K) * (std::abs(sn) * j.abs_err_est + std::abs(cs) * y.abs_err_est) +
                 kEps * (std::abs(s.value) + std::abs(mix) + std::abs(v));
    return {v, err, s.terms_used + j.terms_used + y.terms_used, Method::series};
}

// S_{-1,0} and its zeta-derivative from the logarithmic series
//   S_{-1,0} = -J_0 w^2/2 + (pi/2) Y_0 w + (1/2) sum (-1)^m (zeta/2)^{2m} B(m) / (m!)^2
//   B(m) = [ln 2 + psi(m+1)]^2 - psi'(m+1)/2 + pi^2/4
// The constants of B(m) are split off so only exactly-tracked harmonic partial
// sums ride inside the cancelling dd sums.
std::pair<Eval, Eval> minus10_pair(LogPoint z) {
    const complex w = z.w;
    const complex zeta = z.zeta();
    Eval j0 = bessel_j(0.0, z);
    Eval j1 = bessel_j(1.0, z);
    Eval y0 = bessel_y(0.0, z);
    Eval y1 = bessel_y(1.0, z);

    const double c0 = ln2 - 0.57721566490153286061;      // ln 2 + psi(1)
    const double c1 = c0 * c0 + pi * pi / 6.0;           // B(m) = c1 + 2 c0 h_m + h_m^2 + g_m/2

    dd::Cx ratio = dd::mul(dd::from(zeta * zeta), dd::from(-0.25));
    dd::Cx base = dd::from(complex(1.0, 0.0));
    dd::Real h = dd::from(0.0), g = dd::from(0.0);
    dd::Cx s0 = base, s1{}, s2{};      // sum b, sum b h, sum b (h^2+g/2)
    dd::Cx w1{}, w2{}, w3{};           // same, weighted by m
    double peak = 1.0;
    int small_streak = 0;
    const int cap = term_cap();
    int m = 1;
    for (;; ++m) {
        if (m > cap) throw NonconvergenceError("logarithmic series did not settle");
        base = dd::div(dd::mul(base, ratio), dd::from(static_cast<double>(m) * m));
        h = dd::add(h, dd::div(dd::from(1.0), dd::from(static_cast<double>(m))));
        g = dd::add(g, dd::div(dd::from(1.0), dd::from(static_cast<double>(m) * m)));
        dd::Real quad = dd::add(dd::mul(h, h), dd::mul(g, dd::from(0.5)));
        dd::Cx bh = dd::mul(base, h);
        dd::Cx bq = dd::mul(base, quad);
        s0 = dd::add(s0, base);
        s1 = dd::add(s1, bh);
        s2 = dd::add(s2, bq);
        dd::Real dm = dd::from(static_cast<double>(m));
        w1 = dd::add(w1, dd::mul(base, dm));
        w2 = dd::add(w2, dd::mul(bh, dm));
        w3 = dd::add(w3, dd::mul(bq, dm));
        double tmag = dd::abs_est(bq) + dd::abs_est(base);
        double smag = dd::abs_est(s2) + dd::abs_est(s0) + 1e-300;
        peak = std::max(peak, smag);
        if (tmag < 1e-16 * smag) {
            if (++small_streak == 3) break;
        } else {
            small_streak = 0;
        }
    }

    complex sum_b = c1 * dd::to_complex(s0) + 2.0 * c0 * dd::to_complex(s1) +
                    dd::to_complex(s2);
    complex sum_mb = c1 * dd::to_complex(w1) + 2.0 * c0 * dd::to_complex(w2) +
                     dd::to_complex(w3);
    double tail_err = peak * (std::abs(c1) + 2.0 * std::abs(c0) + 1.0) * 2e-31 +
                      kEps * (std::abs(sum_b) + std::abs(sum_mb));

    complex sv = -0.5 * j0.value * w * w + 0.5 * pi * y0.value * w + 0.5 * sum_b;
    double serr = 0.5 * std::norm(w) * j0.abs_err_est +
                  0.5 * pi * std::abs(w) * y0.abs_err_est + 0.5 * tail_err +
                  kEps * std::abs(sv);

    complex dv = 0.5 * j1.value * w * w - j0.value * w / zeta -
                 0.5 * pi * y1.value * w + 0.5 * pi * y0.value / zeta +
                 sum_mb / zeta;
    double derr = 0.5 * std::norm(w) * j1.abs_err_est +
                  (std::abs(w) * j0.abs_err_est + 0.5 * pi * y0.abs_err_est +
                   tail_err) / std::abs(zeta) +
                  0.5 * pi * std::abs(w) * y1.abs_err_est + kEps * std::abs(dv);

    int terms = m + j0.terms_used + y0.terms_used;
    return {Eval{sv, serr, terms, Method::series},
            Eval{dv, derr, terms, Method::series}};
}

// S_{-n-1,-n} for n >= 1 via the polynomial reduction to S_{-1,0}.
Eval integer_base(int n, LogPoint z) {
    auto [s, sd] = minus10_pair(z);
    AbcPolys abc = abc_polys(n);
    complex zeta = z.zeta();
    complex a = polyval(abc.a, zeta);
    complex b = polyval(abc.b, zeta);
    complex c = polyval(abc.c, zeta);
    complex pref = (n % 2 ? -1.0 : 1.0) * logpoint_pow(z, complex(-n, 0.0)) /
                   (std::pow(2.0, n) * factorial(n));
    complex inner = a + b * s.value + zeta * c * sd.value;
    complex v = pref * inner;
    double r = std::abs(zeta);
    double err = std::abs(pref) *
                 (std::abs(b) * s.abs_err_est + r * std::abs(c) * sd.abs_err_est +
                  kEps * (polyval_abs(abc.a, r) +
                          polyval_abs(abc.b, r) * std::abs(s.value) +
                          r * polyval_abs(abc.c, r) * std::abs(sd.value))) +
                 kEps * std::abs(v);
    return {v, err, s.terms_used, Method::series};
}

}  // namespace

LommelParams classify_lommel(complex mu, complex nu) {
    int pp = 0, pm = 0;
    bool tp = odd_positive(mu + nu, &pp);
    bool tm = odd_positive(mu - nu, &pm);
    if (tp || tm) {
        int p = (tp && tm) ? std::min(pp, pm) : (tp ? pp : pm);
        return {mu, nu, Regime::terminating, p};
    }
    bool sp = odd_negative(mu + nu, &pp);
    bool sm = odd_negative(mu - nu, &pm);
    if (!sp && !sm) return {mu, nu, Regime::generic, -1};

    long n = 0;
    if (integer_distance(nu, &n) <= kIntSnap) {
        // integer nu: take the nonpositive sign, which keeps (1-nu)_p away
        // from zero in the recurrence ladder
        complex ne(-std::abs(static_cast<double>(n)), 0.0);
        long q = std::lround((ne.real() - mu.real() - 1.0) / 2.0);
        if (q >= 0 &&
            std::abs(mu - (ne - complex(2.0 * q + 1.0, 0.0))) <= 1e-7)
            return {mu, ne, Regime::singular, static_cast<int>(q)};
    }
    // fractional nu: the sign that makes mu - nu the odd negative integer
    if (sm) return {mu, nu, Regime::singular, pm};
    return {mu, -nu, Regime::singular, pp};
}

Eval lommel_small_s(complex mu, complex nu, LogPoint z) {
    int dummy = 0;
    if (odd_negative(mu + nu, &dummy) || odd_negative(mu - nu, &dummy))
        throw SingularParamsError("s is undefined when mu+nu or mu-nu is an odd negative integer");

    complex pref = logpoint_pow(z, mu + 1.0);
    complex zeta2 = std::exp(2.0 * z.w);
    complex d0 = (mu + 1.0) * (mu + 1.0) - nu * nu;
    dd::Cx term = dd::from(1.0 / d0);
    dd::Cx sum = term;
    double peak = dd::abs_est(sum);
    int small_streak = 0;
    const int cap = term_cap();
    for (int m = 1; m <= cap; ++m) {
        complex dm = (mu + 2.0 * m + 1.0);
        dm = dm * dm - nu * nu;
        term = dd::div(dd::mul(term, dd::from(-zeta2)), dd::from(dm));
        sum = dd::add(sum, term);
        double tmag = dd::abs_est(term);
        double smag = dd::abs_est(sum) + 1e-300;
        peak = std::max(peak, smag);
        if (tmag < 1e-16 * smag) {
            if (++small_streak == 3) {
                complex v = pref * dd::to_complex(sum);
                double err = std::abs(pref) * (3.0 * tmag + peak * 2e-31) +
                             kEps * std::abs(v);
                return {v, err, m, Method::series};
            }
        } else {
            small_streak = 0;
        }
    }
    throw NonconvergenceError("ascending series did not settle within " +
                              std::to_string(cap) + " terms");
}

complex lommel_K(complex mu, complex nu) {
    complex lg = (mu - 1.0) * ln2 + log_gamma(0.5 * (mu - nu + 1.0)) +
                 log_gamma(0.5 * (mu + nu + 1.0));
    if (lg.real() > exp_overflow_bound)
        throw OverflowError("K constant exceeds double range");
    return std::exp(lg);
}

TerminatingLommel terminating_lommel(complex mu, complex nu) {
    LommelParams prm = classify_lommel(mu, nu);
    if (prm.regime != Regime::terminating)
        throw NotTerminatingError("neither mu+nu nor mu-nu is an odd positive integer");
    TerminatingLommel t{mu, nu, prm.p, {}};
    t.c.reserve(prm.p + 1);
    complex ck = 1.0;
    t.c.push_back(ck);
    for (int k = 1; k <= prm.p; ++k) {
        complex f = mu - (2.0 * k - 1.0);
        ck *= f * f - nu * nu;
        t.c.push_back(ck);
    }
    return t;
}

Eval terminating_eval(const TerminatingLommel& t, LogPoint z) {
    complex pref = logpoint_pow(z, t.mu - 1.0);
    complex inv2 = std::exp(-2.0 * z.w);
    complex acc = 0.0;
    double mag = 0.0;
    for (int k = t.p; k >= 0; --k) acc = acc * inv2 + (k % 2 ? -t.c[k] : t.c[k]);
    double r2 = std::abs(inv2);
    double pw = 1.0;
    for (int k = 0; k <= t.p; ++k) {
        mag += std::abs(t.c[k]) * pw;
        pw *= r2;
    }
    // the would-be next coefficient measures how far the snap moved mu, nu
    complex f = t.mu - (2.0 * t.p + 1.0);
    double drop = std::abs(t.c[t.p] * (f * f - t.nu * t.nu)) * pw;
    complex v = pref * acc;
    double err = std::abs(pref) * (mag * 1e-15 + drop) + kEps * std::abs(v);
    return {v, err, t.p + 1, Method::closed_form};
}

Eval lommel_recurrence_step(complex mu, complex nu, LogPoint z, const Eval& s_mu) {
    complex zp = logpoint_pow(z, mu + 1.0);
    complex a = (mu + 1.0) * (mu + 1.0) - nu * nu;
    complex v = zp - a * s_mu.value;
    double err = std::abs(a) * s_mu.abs_err_est +
                 kEps * (std::abs(zp) + std::abs(a) * std::abs(s_mu.value));
    return {v, err, s_mu.terms_used, s_mu.method};
}

Eval lommel_asymptotic(complex mu, complex nu, LogPoint z) {
    if (std::abs(z.w.imag()) >= pi)
        throw DomainError("descending expansion needs |arg zeta| < pi");
    complex inv2 = std::exp(-2.0 * z.w);
    complex term = 1.0, sum = 0.0;
    double absacc = 0.0;
    double surrogate = 0.0;
    int k = 0;
    for (;; ++k) {
        sum += term;
        absacc += std::abs(term);
        complex f = mu - (2.0 * k + 1.0);
        complex next = -term * (f * f - nu * nu) * inv2;
        if (std::abs(next) >= std::abs(term) || k >= 400) {
            surrogate = std::abs(next);
            ++k;
            break;
        }
        term = next;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 0) {
            surrogate = std::abs(term);
            ++k;
            break;
        }
    }
    complex pref = logpoint_pow(z, mu - 1.0);
    complex v = pref * sum;
    double err = std::abs(pref) * (surrogate + kEps * absacc) + kEps * std::abs(v);
    return {v, err, k, Method::asymptotic};
}

double lommel_asymptotic_floor(complex mu, complex nu, double r) {
    double t = 1.0, best = 1.0;
    double r2 = r * r;
    for (int k = 0; k < 200; ++k) {
        complex f = mu - (2.0 * k + 1.0);
        t *= std::abs(f * f - nu * nu) / r2;
        if (t >= best) break;
        best = t;
        if (best < 1e-30) break;
    }
    return best;
}

Eval lommel_S_nu_minus1(complex nu, LogPoint z) {
    complex gnu = gamma_fn(nu);  // PoleError at nonpositive integers
    Eval j = bessel_j(nu, z);
    Eval y = bessel_y(nu, z);
    complex a0 = 2.0 * ln2 + digamma(nu + 1.0) - 0.57721566490153286061;

    complex zeta2 = std::exp(2.0 * z.w);
    dd::Cx ratio = dd::mul(dd::from(zeta2), dd::from(-0.25));
    dd::Cx base = dd::from(reciprocal_gamma(nu + 1.0));
    dd::Cx delta{};  // psi(nu+m+1)+psi(m+1) minus its m=0 value, exact in dd
    dd::Cx sa = base, sb{};
    double peak = dd::abs_est(base);
    int small_streak = 0;
    const int cap = term_cap();
    int m = 1;
    for (;; ++m) {
        if (m > cap) throw NonconvergenceError("logarithmic series did not settle");
        base = dd::div(dd::mul(base, ratio),
                       dd::from(static_cast<double>(m) * (nu + static_cast<double>(m))));
        delta = dd::add(delta, dd::from(1.0 / (nu + static_cast<double>(m)) +
                                        complex(1.0 / m, 0.0)));
        sa = dd::add(sa, base);
        sb = dd::add(sb, dd::mul(base, delta));
        double tmag = dd::abs_est(base) * (1.0 + dd::abs_est(delta));
        double smag = dd::abs_est(sa) + dd::abs_est(sb) + 1e-300;
        peak = std::max(peak, smag);
        if (tmag < 1e-16 * smag) {
            if (++small_streak == 3) break;
        } else {
            small_streak = 0;
        }
    }
    complex tail = a0 * dd::to_complex(sa) + dd::to_complex(sb);
    double tail_err = peak * (std::abs(a0) + 1.0) * 2e-31 + kEps * std::abs(tail);

    complex p2 = std::exp((nu - 1.0) * ln2);     // 2^{nu-1}
    complex zp = logpoint_pow(z, nu);
    complex inner = p2 * j.value * z.w - 0.5 * p2 * pi * y.value - 0.25 * zp * tail;
    complex v = gnu * inner;
    double err = std::abs(gnu) *
                     (std::abs(p2) * (std::abs(z.w) * j.abs_err_est +
                                      0.5 * pi * y.abs_err_est) +
                      0.25 * std::abs(zp) * tail_err + kEps * std::abs(inner)) +
                 kEps * std::abs(v);
    return {v, err, m + j.terms_used + y.terms_used, Method::series};
}

Eval lommel_S_minus1_0(LogPoint z) {
    if (std::abs(z.w.imag()) < pi &&
        lommel_asymptotic_floor(-1.0, 0.0, z.abs_zeta()) <= kAsymGate)
        return lommel_asymptotic(-1.0, 0.0, z);
    return minus10_pair(z).first;
}

Eval lommel_S_minus1_0_deriv(LogPoint z) {
    // S'_{-1,0} = -2 S_{-2,-1}, from S'_{mu,nu} + (nu/zeta) S = (mu+nu-1) S_{mu-1,nu-1}
    if (std::abs(z.w.imag()) < pi &&
        lommel_asymptotic_floor(-2.0, -1.0, z.abs_zeta()) <= kAsymGate) {
        Eval e = lommel_asymptotic(-2.0, -1.0, z);
        return {-2.0 * e.value, 2.0 * e.abs_err_est, e.terms_used, e.method};
    }
    return minus10_pair(z).second;
}

AbcPolys abc_polys(int n) {
    if (n < 1) throw DomainError("abc_polys: n must be >= 1");
    std::vector<double> a{0.0, 0.0}, b{0.0, 0.0}, c{1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        std::vector<double> na(k + 1, 0.0), nb(k + 1, 0.0), nc(k + 1, 0.0);
        for (size_t j = 0; j < a.size(); ++j) {
            double s = static_cast<double>(j) - 2.0 * (k - 1);
            na[j] += s * a[j];
            nb[j] += s * b[j];
            nc[j] += s * c[j];
        }
        for (size_t j = 0; j < c.size(); ++j) {
            na[j] += c[j];      // + C_{k-1}
            nb[j + 2] -= c[j];  // - zeta^2 C_{k-1}
        }
        for (size_t j = 0; j < b.size(); ++j) nc[j] += b[j];  // + B_{k-1}
        a = std::move(na);
        b = std::move(nb);
        c = std::move(nc);
    }
    return {a, b, c};
}

Eval lommel_S_singular(complex nu, int p, LogPoint z) {
    if (p < 0) throw DomainError("singular family index p must be >= 0");
    long n = 0;
    bool is_int = integer_distance(nu, &n) <= kIntSnap;
    if (is_int && n > 0) {
        // even in nu; renormalize so the ladder constant (1-nu)_p stays nonzero
        if (p < n)
            throw DomainError("parameters are terminating; use the closed form");
        nu = complex(static_cast<double>(-n), 0.0);
        p -= static_cast<int>(n);
    }
    if (p > 60) throw OverflowError("ladder constants exceed double range");

    Eval base;
    if (is_int) {
        int n0 = static_cast<int>(std::labs(n));
        base = (n0 == 0) ? lommel_S_minus1_0(z) : integer_base(n0, z);
    } else {
        base = lommel_S_nu_minus1(nu, z);
    }
    if (p == 0) return base;

    complex scale = (p % 2 ? -1.0 : 1.0) /
                    (std::pow(4.0, p) * factorial(p) * pochhammer(1.0 - nu, p));
    complex acc = scale * base.value;
    double err = std::abs(scale) * base.abs_err_est;
    double mag = std::abs(acc);

    complex zp = logpoint_pow(z, nu - 2.0 * p);
    complex zeta2 = std::exp(2.0 * z.w);
    complex d1 = 1.0, d2 = 1.0;  // (-p)_{m+1}, (nu-p)_{m+1} built below
    for (int m = 0; m < p; ++m) {
        d1 *= (static_cast<double>(-p + m));
        d2 *= (nu - static_cast<double>(p - m));
        complex t = (m % 2 ? -1.0 : 1.0) * zp /
                    (std::pow(2.0, 2 * m + 2) * d1 * d2);
        acc += t;
        mag += std::abs(t);
        zp *= zeta2;
    }
    return {acc, err + kEps * mag, base.terms_used, base.method};
}

Eval lommel_S(complex mu, complex nu, LogPoint z) {
    LommelParams prm = classify_lommel(mu, nu);
    if (prm.regime == Regime::terminating)
        return terminating_eval(terminating_lommel(mu, nu), z);

    bool principal = std::abs(z.w.imag()) < pi;
    bool asym_ok =
        lommel_asymptotic_floor(prm.mu, prm.nu, z.abs_zeta()) <= kAsymGate;

    if (!asym_ok) {
        if (prm.regime == Regime::singular)
            return lommel_S_singular(prm.nu, prm.p, z);
        return generic_series(mu, nu, z);
    }
    if (principal) return lommel_asymptotic(mu, nu, z);

    // reduce to |arg zeta0| <= pi/2, then walk back by half turns
    int mred = static_cast<int>(std::lround(z.w.imag() / pi));
    LogPoint z0 = branch_shift(z, mred);
    if (prm.regime == Regime::singular)
        return continue_S_singular(prm.nu, prm.p, -mred, z0);
    return continue_S(mu, nu, -mred, z0);
}

}  // namespace lommel
