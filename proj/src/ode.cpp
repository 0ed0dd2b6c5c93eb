#include "lommel/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "lommel/bessel.hpp"
#include "lommel/continuation.hpp"
#include "lommel/gamma.hpp"
#include "lommel/special_polys.hpp"

namespace lommel {
namespace {

constexpr double kEps = 1e-16;
constexpr double kSqrtPi = 1.7724538509055160273;
const complex kI(0.0, 1.0);

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

void require_nondegenerate(const OdeSpec& spec) {
    if (std::abs(spec.L) == 0.0 || std::abs(spec.M) == 0.0)
        throw DomainError("L and M must be nonzero");
}

bool nonzero(complex c) { return std::abs(c) != 0.0; }

// sum of log(a+k); off by multiples of 2 pi i from log of the product,
// which exp() cannot see.
complex log_pochhammer(complex a, int p) {
    complex acc = 0.0;
    for (int k = 0; k < p; ++k) acc += std::log(a + static_cast<double>(k));
    return acc;
}

// log H^{(1,2)}_nu(zeta) from the large-argument expansion, assembled so the
// doubly exponential i*zeta phase never leaves the log domain.
complex log_hankel_asym(int kind, complex nu, LogPoint z) {
    if (std::abs(z.w.imag()) >= pi)
        throw DomainError("log Hankel expansion needs the principal sheet");
    complex zeta = z.zeta();
    complex den = (kind == 1 ? 2.0 * kI : -2.0 * kI) * zeta;
    complex nu2 = nu * nu;
    complex term = 1.0, sum = 1.0;
    for (int k = 0; k < 200; ++k) {
        double kh = k + 0.5;
        complex next = term * (kh * kh - nu2) / ((k + 1.0) * den);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    complex phase = zeta - nu * (pi / 2.0) - pi / 4.0;
    complex expo = -0.5 * (std::log(pi / 2.0) + z.w) +
                   (kind == 1 ? kI : -kI) * phase;
    return expo + std::log(sum);
}

// log of the descending expansion zeta^{mu-1} sum (-1)^k c_k zeta^{-2k},
// truncated at the smallest term.  Exact on every branch when the sum
// terminates; otherwise the caller must pass a principal-sheet point.
complex log_lommel_asym(complex mu, complex nu, LogPoint z) {
    complex u = std::exp(-2.0 * z.w);
    complex nu2 = nu * nu;
    complex term = 1.0, acc = 1.0;
    for (int k = 0; k < 200; ++k) {
        complex b = mu - (2.0 * k + 1.0);
        complex next = -term * (b * b - nu2) * u;
        if (std::abs(next) >= std::abs(term) && k > 0) break;
        term = next;
        acc += term;
        if (std::abs(term) < 1e-17 * std::abs(acc)) break;
    }
    return (mu - 1.0) * z.w + std::log(acc);
}

// log of sum_j c_j zeta^j for real ascending coefficients, factoring out the
// top nonzero power so only zeta^{-1} appears.  Real part -inf when empty.
complex log_polyval(const std::vector<double>& c, LogPoint z) {
    size_t top = c.size();
    while (top > 0 && c[top - 1] == 0.0) --top;
    if (top == 0)
        return complex(-std::numeric_limits<double>::infinity(), 0.0);
    complex u = std::exp(-z.w);
    complex acc = c[top - 1];
    for (size_t j = top - 1; j-- > 0;) acc = acc * u + c[j];
    return static_cast<double>(top - 1) * z.w + std::log(acc);
}

// log | sum_k exp(lambda_k) |; components more than 1400 below the peak
// cannot move a double and are dropped.
double log_abs_sum(const std::vector<complex>& lambdas) {
    double mx = -std::numeric_limits<double>::infinity();
    for (complex l : lambdas) mx = std::max(mx, l.real());
    if (!std::isfinite(mx)) return mx;
    complex acc = 0.0;
    for (complex l : lambdas)
        if (l.real() > mx - 1400.0) acc += std::exp(l - mx);
    double a = std::abs(acc);
    if (a == 0.0) return -std::numeric_limits<double>::infinity();
    return mx + std::log(a);
}

// Components of log f at the surface point w_n = w0 + 2n pi i, expressed
// through principal-sheet data via the half-turn laws with m = -2n.
void append_forcing_components(const Forcing& fc, complex nu, int n,
                               LogPoint w0, LogPoint wn,
                               std::vector<complex>* out) {
    complex lsig = std::log(fc.sigma);
    int m = -2 * n;
    double dm = m;
    LommelParams prm = classify_lommel(fc.mu, nu);

    if (prm.regime == Regime::terminating) {
        // exact finite descending sum, valid at the surface point itself
        out->push_back(lsig + log_lommel_asym(fc.mu, nu, wn));
        return;
    }
    if (prm.regime == Regime::generic) {
        complex lrot = kI * pi * dm * (1.0 - fc.mu);
        out->push_back(lsig + lrot + log_lommel_asym(fc.mu, nu, w0));
        PQPair pq = continuation_pq(m, fc.mu, nu);
        complex cp = pq.k_plus * pq.p;
        complex cq = pq.k_plus * std::exp(-kI * pi * nu) * pq.q;
        if (nonzero(cp))
            out->push_back(lsig + std::log(cp) + log_hankel_asym(1, nu, w0));
        if (nonzero(cq))
            out->push_back(lsig + std::log(cq) + log_hankel_asym(2, nu, w0));
        return;
    }

    // singular family S_{nu-2p-1,nu} with the sign-adjusted nu
    complex ns = prm.nu;
    int p = prm.p;
    complex mu_eff = ns - (2.0 * p + 1.0);
    long nint = 0;
    bool is_int = integer_distance(ns, &nint) <= 1e-8;

    if (!is_int) {
        out->push_back(lsig - kI * pi * ns * dm + log_lommel_asym(mu_eff, ns, w0));
        SingularK k = singular_k_fractional(ns, m);
        complex lscale = kI * pi * static_cast<double>(p) -
                         p * std::log(4.0) - std::lgamma(p + 1.0) -
                         log_pochhammer(1.0 - ns, p);
        if (nonzero(k.k_plus))
            out->push_back(lsig + lscale + std::log(k.k_plus) +
                           log_hankel_asym(1, ns, w0));
        if (nonzero(k.k_minus))
            out->push_back(lsig + lscale + std::log(k.k_minus) +
                           log_hankel_asym(2, ns, w0));
        return;
    }
    if (nint > 0)
        throw DomainError("singular family needs a nonpositive integer nu");

    int n0 = static_cast<int>(-nint);
    SingularK kz = singular_k_zero(m);
    if (n0 == 0) {
        out->push_back(lsig + log_lommel_asym(mu_eff, 0.0, w0));
        complex lscale = kI * pi * static_cast<double>(p) -
                         p * std::log(4.0) - 2.0 * std::lgamma(p + 1.0);
        if (nonzero(kz.k_plus))
            out->push_back(lsig + lscale + std::log(kz.k_plus) +
                           log_hankel_asym(1, 0.0, w0));
        if (nonzero(kz.k_minus))
            out->push_back(lsig + lscale + std::log(kz.k_minus) +
                           log_hankel_asym(2, 0.0, w0));
        return;
    }

    out->push_back(lsig + kI * pi * (dm * n0) + log_lommel_asym(mu_eff, ns, w0));
    complex lpref = lsig + kI * pi * static_cast<double>((m + 1) * n0 + p) -
                    static_cast<double>(n0) * w0.w -
                    ((2.0 * p + n0) * ln2 + std::lgamma(n0 + 1.0) +
                     std::lgamma(p + 1.0) +
                     log_pochhammer(complex(1.0 + n0, 0.0), p));
    AbcPolys abc = abc_polys(n0);
    PolySplit spa = poly_branch_split(abc.a, m);
    PolySplit spb = poly_branch_split(abc.b, m);
    PolySplit spc = poly_branch_split(abc.c, m);
    complex ls10 = log_lommel_asym(-1.0, 0.0, w0);
    // S'_{-1,0} = -2 S_{-2,-1}
    complex ls10d = std::log(2.0) + kI * pi + log_lommel_asym(-2.0, -1.0, w0);
    if (spa.delta != 0) {
        complex ldelta = std::log(complex(-static_cast<double>(spa.delta), 0.0));
        complex la = log_polyval(spa.hat, w0);
        complex lb = log_polyval(spb.hat, w0);
        complex lc = log_polyval(spc.hat, w0);
        if (std::isfinite(la.real())) out->push_back(lpref + ldelta + la);
        if (std::isfinite(lb.real())) out->push_back(lpref + ldelta + lb + ls10);
        if (std::isfinite(lc.real()))
            out->push_back(lpref + ldelta + w0.w + lc + ls10d);
    }
    complex lbbar = log_polyval(spb.bar, w0);
    if (std::isfinite(lbbar.real())) {
        if (nonzero(kz.k_plus))
            out->push_back(lpref + lbbar + std::log(kz.k_plus) +
                           log_hankel_asym(1, 0.0, w0));
        if (nonzero(kz.k_minus))
            out->push_back(lpref + lbbar + std::log(kz.k_minus) +
                           log_hankel_asym(2, 0.0, w0));
    }
    complex lcbar = log_polyval(spc.bar, w0);
    if (std::isfinite(lcbar.real())) {
        complex lead = lpref + kI * pi + w0.w + lcbar;
        if (nonzero(kz.k_plus))
            out->push_back(lead + std::log(kz.k_plus) +
                           log_hankel_asym(1, 1.0, w0));
        if (nonzero(kz.k_minus))
            out->push_back(lead + std::log(kz.k_minus) +
                           log_hankel_asym(2, 1.0, w0));
    }
}

GrowthProbe run_probe(const SolutionSpec& sol, int n_max) {
    require_nondegenerate(sol.spec);
    if (n_max < 3) throw DomainError("n_max must be at least 3");

    const OdeSpec& spec = sol.spec;
    double a = std::arg(spec.L);
    double b = std::arg(spec.M);
    double am = std::abs(spec.M);
    complex C = 0.5 * (sol.A - kI * sol.B);
    complex D = 0.5 * (sol.A + kI * sol.B);
    bool c_live = std::abs(C) > 1e-14;
    double quarter = c_live ? -pi / 4.0 : pi / 4.0;
    complex dir = std::exp(kI * (pi / 4.0 - b));

    bool any_term = nonzero(sol.A) || nonzero(sol.B);
    for (const Forcing& fc : spec.forcing) any_term = any_term || nonzero(fc.sigma);
    if (!any_term) throw DomainError("solution is identically zero");

    GrowthProbe probe;
    probe.expected_if_unbounded = am / std::sqrt(2.0);

    for (int n = 1; n <= n_max; ++n) {
        // |M| r_n / sqrt(2) = 2 n pi -+ pi/4 - arg L, so Im w0 = -+ pi/4 exactly
        double phi = 2.0 * n * pi + quarter - a;
        double rn = std::sqrt(2.0) * phi / am;
        LogPoint w0{complex(std::log(std::abs(spec.L)) + phi, quarter)};
        if (w0.w.real() > 700.0) break;
        if (w0.abs_zeta() < 4.0) continue;  // below the asymptotic floor
        LogPoint wn{w0.w + kI * (2.0 * n * pi)};
        complex zn = rn * dir;

        std::vector<complex> comps;
        if (nonzero(sol.A) || nonzero(sol.B)) {
            HankelCoeffs hc = hankel_continuation_coeffs(2 * n, spec.nu);
            complex c1 = C * hc.a + D * hc.c;
            complex c2 = C * hc.b + D * hc.d;
            if (nonzero(c1))
                comps.push_back(std::log(c1) + log_hankel_asym(1, spec.nu, w0));
            if (nonzero(c2))
                comps.push_back(std::log(c2) + log_hankel_asym(2, spec.nu, w0));
        }
        for (const Forcing& fc : spec.forcing) {
            if (!nonzero(fc.sigma)) continue;
            append_forcing_components(fc, spec.nu, n, w0, wn, &comps);
        }

        double logf = log_abs_sum(comps) + (-spec.N * zn).real();
        if (!std::isfinite(logf)) logf = -1e15;  // total cancellation
        GrowthSample smp;
        smp.n = n;
        smp.r_n = rn;
        smp.log_over_r = logf / rn;
        smp.loglog_over_r = logf > 1.0 ? std::log(logf) / rn : 0.0;
        probe.samples.push_back(smp);
    }
    if (probe.samples.empty())
        throw OverflowError("no probe point has a representable inner argument");
    probe.tail = probe.samples.back().loglog_over_r;
    probe.achieved_n = probe.samples.back().n;
    probe.bounded = probe.tail < 0.5 * probe.expected_if_unbounded;
    return probe;
}

std::string format_complex(complex c) {
    char buf[80];
    if (c.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.6g", c.real());
    else
        std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", c.real(), c.imag());
    return buf;
}

}  // namespace

TransformedOde lommel_transform(const OdeSpec& spec) {
    require_nondegenerate(spec);
    return {spec.L, spec.M, spec.N, 1, spec.nu, spec.forcing};
}

Evaluator general_solution(const SolutionSpec& sol) {
    require_nondegenerate(sol.spec);
    const SolutionSpec s = sol;
    const complex logL = std::log(s.spec.L);
    return [s, logL](complex z) -> Eval {
        complex ex = -s.spec.N * z;
        if (ex.real() > exp_overflow_bound)
            throw OverflowError("damping factor exceeds double range");
        LogPoint w{logL + s.spec.M * z};
        complex damp = std::exp(ex);
        complex acc = 0.0;
        double err = 0.0;
        long terms = 0;
        if (nonzero(s.A)) {
            Eval j = bessel_j(s.spec.nu, w);
            acc += s.A * j.value;
            err += std::abs(s.A) * j.abs_err_est;
            terms += j.terms_used;
        }
        if (nonzero(s.B)) {
            Eval y = bessel_y(s.spec.nu, w);
            acc += s.B * y.value;
            err += std::abs(s.B) * y.abs_err_est;
            terms += y.terms_used;
        }
        for (const Forcing& fc : s.spec.forcing) {
            if (!nonzero(fc.sigma)) continue;
            Eval sv = lommel_S(fc.mu, s.spec.nu, w);
            acc += fc.sigma * sv.value;
            err += std::abs(fc.sigma) * sv.abs_err_est;
            terms += sv.terms_used;
        }
        complex v = damp * acc;
        return {v, std::abs(damp) * err + kEps * std::abs(v), terms,
                Method::series};
    };
}

double ode_residual(const OdeSpec& spec, const Evaluator& f, complex z) {
    require_nondegenerate(spec);
    complex wz = std::log(spec.L) + spec.M * z;
    double azeta = std::exp(std::min(wz.real(), 700.0));
    double freq = std::max(std::abs(spec.M) * (2.0 + azeta + std::abs(spec.nu)),
                           std::abs(spec.N));
    for (const Forcing& fc : spec.forcing)
        freq = std::max(freq, std::abs(spec.M * (fc.mu + 1.0) - spec.N));
    freq = std::max(freq, 1.0);
    double h = 0.02 / freq;

    complex fs[7];
    for (int k = -3; k <= 3; ++k)
        fs[k + 3] = f(z + complex(k * h, 0.0)).value;
    complex d1 = (-fs[0] + 9.0 * fs[1] - 45.0 * fs[2] + 45.0 * fs[4] -
                  9.0 * fs[5] + fs[6]) /
                 (60.0 * h);
    complex d2 = (2.0 * fs[0] - 27.0 * fs[1] + 270.0 * fs[2] - 490.0 * fs[3] +
                  270.0 * fs[4] - 27.0 * fs[5] + 2.0 * fs[6]) /
                 (180.0 * h * h);

    complex coeff = spec.L * spec.L * spec.M * spec.M * std::exp(2.0 * spec.M * z) +
                    spec.N * spec.N - spec.nu * spec.nu * spec.M * spec.M;
    complex rhs = 0.0;
    for (const Forcing& fc : spec.forcing) {
        if (!nonzero(fc.sigma)) continue;
        rhs += fc.sigma * spec.M * spec.M *
               std::exp((fc.mu + 1.0) * wz - spec.N * z);
    }
    complex damping = 2.0 * spec.N * d1;
    complex resid = d2 + damping + coeff * fs[3] - rhs;
    double scale = std::max({std::abs(d2), std::abs(damping),
                             std::abs(coeff * fs[3]), std::abs(rhs), 1e-300});
    return std::abs(resid) / scale;
}

double ode_residual(const SolutionSpec& sol, complex z) {
    return ode_residual(sol.spec, general_solution(sol), z);
}

SubnormalVerdict classify_subnormal(const SolutionSpec& sol) {
    require_nondegenerate(sol.spec);
    std::vector<int> live;
    for (size_t j = 0; j < sol.spec.forcing.size(); ++j)
        if (nonzero(sol.spec.forcing[j].sigma)) live.push_back(static_cast<int>(j));
    for (size_t i = 0; i < live.size(); ++i)
        for (size_t j = i + 1; j < live.size(); ++j) {
            double gap = std::abs(sol.spec.forcing[live[i]].mu.real() -
                                  sol.spec.forcing[live[j]].mu.real());
            if (gap < 1e-10)
                throw HypothesisError(
                    "forcing exponents must have pairwise distinct real parts");
        }

    SubnormalVerdict v;
    if (nonzero(sol.A) || nonzero(sol.B)) {
        v.reason = NotSubnormalReason::nonzero_ab;
        return v;
    }
    if (live.empty())
        throw DomainError("at least one nonzero forcing term is required");
    for (int j : live) {
        LommelParams prm = classify_lommel(sol.spec.forcing[j].mu, sol.spec.nu);
        if (prm.regime != Regime::terminating) {
            v.reason = NotSubnormalReason::nonterminating_index;
            v.bad_index = j;
            return v;
        }
    }
    for (int j : live)
        v.terms.push_back(
            terminating_lommel(sol.spec.forcing[j].mu, sol.spec.nu));
    v.verdict = Verdict::subnormal;
    return v;
}

GrowthProbe growth_probe(const SolutionSpec& sol, int n_max) {
    return run_probe(sol, n_max);
}

GrowthProbe growth_probe_struve(const OdeSpec& spec, int n_max) {
    // H_nu = Y_nu + 2^{1-nu} S_{nu,nu} / (sqrt(pi) Gamma(nu+1/2))
    SolutionSpec sol;
    sol.A = 0.0;
    sol.B = 1.0;
    sol.spec = spec;
    sol.spec.forcing.clear();
    complex c = std::exp((1.0 - spec.nu) * ln2) *
                reciprocal_gamma(spec.nu + 0.5) / kSqrtPi;
    if (nonzero(c)) sol.spec.forcing.push_back({c, spec.nu});
    return run_probe(sol, n_max);
}

QuantizationRow quantization_case(int case_id, int p, complex sigma) {
    if (case_id < 1 || case_id > 4) throw UsageError("case must be 1, 2, 3 or 4");
    if (p < 0) throw DomainError("p must be >= 0");

    QuantizationRow row;
    row.solution.A = 0.0;
    row.solution.B = 0.0;
    row.solution.spec.L = 2.0;
    row.solution.spec.M = 0.5;
    row.solution.spec.N = 0.0;
    char buf[160];

    switch (case_id) {
        case 1: {
            row.k_num = static_cast<long>(p) * p;
            row.k_den = 1;
            row.solution.spec.nu = 2.0 * p;
            row.solution.spec.forcing = {{sigma, complex(1.0, 0.0)}};
            row.f = [sigma, p](complex z) -> Eval {
                LogPoint w{ln2 + 0.5 * z};
                Eval o = neumann_o(2 * p, w);
                complex pre = 2.0 * sigma * std::exp(0.5 * z);
                return {pre * o.value, std::abs(pre) * o.abs_err_est,
                        o.terms_used, o.method};
            };
            std::snprintf(buf, sizeof buf,
                          "f(z) = 2 sigma e^{z/2} O_%d(2 e^{z/2}), sigma = %s",
                          2 * p, format_complex(sigma).c_str());
            break;
        }
        case 2: {
            row.k_num = static_cast<long>(2 * p + 1) * (2 * p + 1);
            row.k_den = 4;
            row.solution.spec.nu = 2.0 * p + 1.0;
            row.solution.spec.forcing = {{sigma, complex(0.0, 0.0)}};
            row.f = [sigma, p](complex z) -> Eval {
                LogPoint w{ln2 + 0.5 * z};
                Eval o = neumann_o(2 * p + 1, w);
                complex pre = 2.0 * sigma * std::exp(0.5 * z) / (2.0 * p + 1.0);
                return {pre * o.value, std::abs(pre) * o.abs_err_est,
                        o.terms_used, o.method};
            };
            std::snprintf(
                buf, sizeof buf,
                "f(z) = (2 sigma/%d) e^{z/2} O_%d(2 e^{z/2}), sigma = %s",
                2 * p + 1, 2 * p + 1, format_complex(sigma).c_str());
            break;
        }
        case 3: {
            row.k_num = static_cast<long>(p + 1) * (p + 1);
            row.k_den = 1;
            row.solution.spec.nu = 2.0 * p + 2.0;
            row.solution.spec.forcing = {{sigma, complex(-1.0, 0.0)}};
            row.f = [sigma, p](complex z) -> Eval {
                LogPoint w{ln2 + 0.5 * z};
                Eval s = schlafli_s(2 * p + 2, w);
                complex pre = sigma / (4.0 * (p + 1.0));
                return {pre * s.value, std::abs(pre) * s.abs_err_est,
                        s.terms_used, s.method};
            };
            std::snprintf(buf, sizeof buf,
                          "f(z) = (sigma/%d) S_%d(2 e^{z/2}), sigma = %s",
                          4 * (p + 1), 2 * p + 2, format_complex(sigma).c_str());
            break;
        }
        default: {
            row.k_num = static_cast<long>(2 * p + 1) * (2 * p + 1);
            row.k_den = 16;
            complex nu(p + 0.5, 0.0);
            row.solution.spec.nu = nu;
            row.solution.spec.forcing = {{sigma, nu}};
            double pre_r = std::pow(2.0, p - 0.5) * kSqrtPi * factorial(p);
            row.f = [sigma, nu, pre_r](complex z) -> Eval {
                LogPoint w{ln2 + 0.5 * z};
                Eval k = struve_k(nu, w);
                complex pre = sigma * pre_r;
                return {pre * k.value, std::abs(pre) * k.abs_err_est,
                        k.terms_used, k.method};
            };
            std::snprintf(buf, sizeof buf,
                          "f(z) = %.6g sigma [H_{%d/2} - Y_{%d/2}](2 e^{z/2}), "
                          "sigma = %s",
                          pre_r, 2 * p + 1, 2 * p + 1,
                          format_complex(sigma).c_str());
            break;
        }
    }
    row.K = complex(static_cast<double>(row.k_num) / row.k_den, 0.0);
    row.description = buf;
    return row;
}

}  // namespace lommel
