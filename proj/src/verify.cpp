#include "lommel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "lommel/bessel.hpp"
#include "lommel/continuation.hpp"
#include "lommel/gamma.hpp"
#include "lommel/lommel.hpp"
#include "lommel/ode.hpp"
#include "lommel/special_polys.hpp"

namespace lommel {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long long seed) : eng(seed) {}
    double uni(double a, double b) {
        std::uniform_real_distribution<double> d(a, b);
        return d(eng);
    }
    int pick(int a, int b) {
        std::uniform_int_distribution<int> d(a, b);
        return d(eng);
    }
    complex box(double r0, double r1, double i0, double i1) {
        double re = uni(r0, r1);
        double im = uni(i0, i1);
        return {re, im};
    }
};

std::string fmt_c(complex c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g%+.3gi", c.real(), c.imag());
    return buf;
}

double rel_gap(complex a, complex b) {
    double m = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(a - b) / m;
}

// One identity check: passes when the gap is within the tolerance or within
// eight times the evaluations' own error bars (ill-conditioned corners report
// honest bars instead of spurious failures).
void record(SuiteResult* res, double err, double bars, double tol,
            const std::string& label) {
    if (err <= std::max(tol, 8.0 * bars))
        ++res->pass;
    else
        ++res->fail;
    if (err > res->worst_error) {
        res->worst_error = err;
        res->worst_case = label;
    }
}

void record_throw(SuiteResult* res, const Error& e, const std::string& label) {
    ++res->fail;
    std::string msg = label + " threw " + e.code() + ": " + e.what();
    if (res->worst_case.empty() || res->worst_error == 0.0) res->worst_case = msg;
    res->worst_error = std::max(res->worst_error, 1e30);
}

// nu off the real axis keeps every draw clear of Gamma poles and of the
// odd-integer parameter lattice.
complex off_axis(Rng& rng, double r0, double r1) {
    return rng.box(r0, r1, 0.05, 0.45);
}

void suite_terminating(SuiteResult* res, int samples, Rng& rng, double tol) {
    for (int k = 0; k < samples; ++k) {
        complex nu = off_axis(rng, -2.2, 2.8);
        int p = rng.pick(0, 5);
        bool plus = rng.pick(0, 1) == 1;
        complex mu = (plus ? -nu : nu) + (2.0 * p + 1.0);
        double r = rng.uni(0.5, 10.0);
        LogPoint z{complex(std::log(r), rng.uni(-2.5 * pi, 2.5 * pi))};
        char label[160];
        std::snprintf(label, sizeof label,
                      "terminating S(mu=%s,nu=%s) |zeta|=%.3g",
                      fmt_c(mu).c_str(), fmt_c(nu).c_str(), r);
        try {
            Eval closed = terminating_eval(terminating_lommel(mu, nu), z);
            Eval s = lommel_small_s(mu, nu, z);
            Eval j = bessel_j(nu, z);
            Eval y = bessel_y(nu, z);
            complex K = lommel_K(mu, nu);
            complex half = 0.5 * (mu - nu) * pi;
            complex sn = std::sin(half), cs = std::cos(half);
            complex assembled = s.value + K * (sn * j.value - cs * y.value);
            double mag = std::max({std::abs(closed.value), std::abs(assembled),
                                   1e-30});
            double bars = (closed.abs_err_est + s.abs_err_est +
                           std::abs(K) * (std::abs(sn) * j.abs_err_est +
                                          std::abs(cs) * y.abs_err_est)) /
                          mag;
            record(res, rel_gap(closed.value, assembled), bars, tol, label);
        } catch (const Error& e) {
            record_throw(res, e, label);
        }
    }
}

void suite_recurrence(SuiteResult* res, int samples, Rng& rng, double tol) {
    for (int k = 0; k < samples; ++k) {
        complex mu = off_axis(rng, -1.8, 1.8);
        complex nu = off_axis(rng, -1.8, 1.8);
        double r = rng.uni(0.5, 8.0);
        LogPoint z{complex(std::log(r), rng.uni(-2.5 * pi, 2.5 * pi))};
        char label[160];
        std::snprintf(label, sizeof label,
                      "recurrence S(mu=%s,nu=%s) |zeta|=%.3g",
                      fmt_c(mu).c_str(), fmt_c(nu).c_str(), r);
        try {
            Eval base = lommel_S(mu, nu, z);
            Eval stepped = lommel_recurrence_step(mu, nu, z, base);
            Eval direct = lommel_S(mu + 2.0, nu, z);
            double mag = std::max({std::abs(direct.value),
                                   std::abs(stepped.value), 1e-30});
            double bars = (direct.abs_err_est + stepped.abs_err_est) / mag;
            record(res, rel_gap(direct.value, stepped.value), bars, tol, label);
        } catch (const Error& e) {
            record_throw(res, e, label);
        }
    }
}

void suite_continuation(SuiteResult* res, int samples, Rng& rng, double tol) {
    for (int k = 0; k < samples; ++k) {
        complex mu = off_axis(rng, -1.5, 1.5);
        complex nu = off_axis(rng, -1.5, 1.5);
        int m = rng.pick(1, 3) * (rng.pick(0, 1) == 1 ? 1 : -1);
        double r = rng.uni(1.0, 5.0);
        LogPoint z{complex(std::log(r), rng.uni(-0.95 * pi, 0.95 * pi))};
        char label[160];
        std::snprintf(label, sizeof label,
                      "continuation S(mu=%s,nu=%s) m=%d |zeta|=%.3g",
                      fmt_c(mu).c_str(), fmt_c(nu).c_str(), m, r);
        try {
            Eval law = continue_S(mu, nu, m, z);
            Eval direct = lommel_S(mu, nu, branch_shift(z, m));
            double mag = std::max({std::abs(law.value), std::abs(direct.value),
                                   1e-30});
            double bars = (law.abs_err_est + direct.abs_err_est) / mag;
            double err = rel_gap(law.value, direct.value);

            // coefficient identities ride along at the same tolerance
            int mq = m == 1 ? 2 : m;
            PQPair a = continuation_pq(mq, mu, nu);
            PQPair b = continuation_pq(mq - 1, mu, nu);
            PQPair rec = continuation_pq_recursive(mq, mu, nu);
            err = std::max(err, rel_gap(a.q, b.p));
            err = std::max(err, rel_gap(a.p, rec.p));
            err = std::max(err, rel_gap(a.q, rec.q));
            record(res, err, bars, tol, label);
        } catch (const Error& e) {
            record_throw(res, e, label);
        }
    }
}

void suite_parity(SuiteResult* res, int samples, Rng& rng, double tol) {
    for (int k = 0; k < samples; ++k) {
        complex nu = off_axis(rng, -2.0, 2.0);
        complex mu;
        if (rng.pick(0, 1) == 1) {
            mu = nu + (2.0 * rng.pick(0, 4) + 1.0);  // terminating draw
        } else {
            mu = off_axis(rng, -1.8, 1.8);  // generic draw
        }
        double r = rng.uni(0.5, 8.0);
        LogPoint z{complex(std::log(r), rng.uni(-2.5 * pi, 2.5 * pi))};
        char label[160];
        std::snprintf(label, sizeof label,
                      "parity S(mu=%s,nu=%s) |zeta|=%.3g",
                      fmt_c(mu).c_str(), fmt_c(nu).c_str(), r);
        try {
            Eval plus = lommel_S(mu, nu, z);
            Eval minus = lommel_S(mu, -nu, z);
            double mag = std::max({std::abs(plus.value), std::abs(minus.value),
                                   1e-30});
            double bars = (plus.abs_err_est + minus.abs_err_est) / mag;
            record(res, rel_gap(plus.value, minus.value), bars, tol, label);
        } catch (const Error& e) {
            record_throw(res, e, label);
        }
    }
}

void suite_relations(SuiteResult* res, int samples, Rng& rng, double tol) {
    for (int k = 0; k < samples; ++k) {
        double r = rng.uni(0.6, 6.0);
        LogPoint z{complex(std::log(r),
                           rng.uni(-pi, pi) + pi * rng.pick(-1, 1))};
        complex zeta = z.zeta();
        int which = k % 5;
        char label[160];
        try {
            switch (which) {
                case 0: {  // O_{2p} = S_{1,2p} / zeta
                    int p = rng.pick(0, 4);
                    std::snprintf(label, sizeof label,
                                  "relation O_%d |zeta|=%.3g", 2 * p, r);
                    Eval o = neumann_o(2 * p, z);
                    Eval s = lommel_S(1.0, 2.0 * p, z);
                    double bars = (o.abs_err_est + s.abs_err_est / r) /
                                  std::max(std::abs(o.value), 1e-30);
                    record(res, rel_gap(o.value, s.value / zeta), bars, tol,
                           label);
                    break;
                }
                case 1: {  // O_{2p+1} = (2p+1) S_{0,2p+1} / zeta
                    int p = rng.pick(0, 4);
                    std::snprintf(label, sizeof label,
                                  "relation O_%d |zeta|=%.3g", 2 * p + 1, r);
                    Eval o = neumann_o(2 * p + 1, z);
                    Eval s = lommel_S(0.0, 2.0 * p + 1.0, z);
                    complex rhs = (2.0 * p + 1.0) * s.value / zeta;
                    double bars =
                        (o.abs_err_est + (2.0 * p + 1.0) * s.abs_err_est / r) /
                        std::max(std::abs(o.value), 1e-30);
                    record(res, rel_gap(o.value, rhs), bars, tol, label);
                    break;
                }
                case 2: {  // n S_n / 2 = zeta O_n - cos^2(n pi/2)
                    int n = rng.pick(0, 8);
                    std::snprintf(label, sizeof label,
                                  "relation S_%d |zeta|=%.3g", n, r);
                    Eval s = schlafli_s(n, z);
                    Eval o = neumann_o(n, z);
                    complex lhs = 0.5 * n * s.value + (n % 2 == 0 ? 1.0 : 0.0);
                    complex rhs = zeta * o.value;
                    double bars = (0.5 * n * s.abs_err_est + r * o.abs_err_est) /
                                  std::max(std::abs(rhs), 1e-30);
                    record(res, rel_gap(lhs, rhs), bars, tol, label);
                    break;
                }
                case 3: {  // Gegenbauer reduction to terminating S
                    int p = rng.pick(0, 3);
                    complex nu = off_axis(rng, 0.15, 2.2);
                    bool even = rng.pick(0, 1) == 1;
                    int n = even ? 2 * p : 2 * p + 1;
                    std::snprintf(label, sizeof label,
                                  "relation A_%d(nu=%s) |zeta|=%.3g", n,
                                  fmt_c(nu).c_str(), r);
                    Eval a = gegenbauer_a(n, nu, z);
                    complex order = nu + static_cast<double>(n);
                    complex mu = even ? 1.0 - nu : -nu;
                    Eval s = lommel_S(mu, order, z);
                    complex pref =
                        std::exp((even ? nu : nu + 1.0) * ln2 +
                                 log_gamma(even ? nu + static_cast<double>(p)
                                                : nu + (p + 1.0)) -
                                 std::lgamma(p + 1.0)) *
                        order * logpoint_pow(z, nu - 1.0);
                    complex rhs = pref * s.value;
                    double mag = std::max(std::abs(a.value), 1e-30);
                    double bars =
                        (a.abs_err_est + std::abs(pref) * s.abs_err_est) / mag;
                    record(res, rel_gap(a.value, rhs), bars, tol, label);
                    break;
                }
                default: {  // Struve splitting H = Y + c S_{nu,nu}
                    complex nu = off_axis(rng, -1.2, 2.0);
                    std::snprintf(label, sizeof label,
                                  "relation H(nu=%s) |zeta|=%.3g",
                                  fmt_c(nu).c_str(), r);
                    Eval h = struve_h(nu, z);
                    Eval y = bessel_y(nu, z);
                    Eval s = lommel_S(nu, nu, z);
                    complex c = std::exp((1.0 - nu) * ln2) *
                                reciprocal_gamma(nu + 0.5) / kSqrtPi;
                    complex rhs = y.value + c * s.value;
                    double mag =
                        std::max({std::abs(h.value), std::abs(rhs), 1e-30});
                    double bars = (h.abs_err_est + y.abs_err_est +
                                   std::abs(c) * s.abs_err_est) /
                                  mag;
                    double err = rel_gap(h.value, rhs);
                    err = std::max(err, std::abs(c * lommel_K(nu, nu) - 1.0));
                    record(res, err, bars, tol, label);
                    break;
                }
            }
        } catch (const Error& e) {
            record_throw(res, e, label);
        }
    }
}

void suite_asymptotic(SuiteResult* res, int samples, Rng& rng, double tol) {
    for (int k = 0; k < samples; ++k) {
        complex mu = off_axis(rng, -2.8, 2.8);
        complex nu = off_axis(rng, -2.8, 2.8);
        char label[160];
        try {
            if (k % 2 == 0) {
                // overlap window: descending expansion vs series assembly
                double r = rng.uni(15.0, 25.0);
                LogPoint z{complex(std::log(r), rng.uni(-0.9 * pi, 0.9 * pi))};
                std::snprintf(label, sizeof label,
                              "asymptotic overlap S(mu=%s,nu=%s) |zeta|=%.3g",
                              fmt_c(mu).c_str(), fmt_c(nu).c_str(), r);
                Eval a = lommel_asymptotic(mu, nu, z);
                Eval s = lommel_small_s(mu, nu, z);
                Eval j = bessel_j(nu, z);
                Eval y = bessel_y(nu, z);
                complex K = lommel_K(mu, nu);
                complex half = 0.5 * (mu - nu) * pi;
                complex sn = std::sin(half), cs = std::cos(half);
                complex assembled = s.value + K * (sn * j.value - cs * y.value);
                double mag =
                    std::max({std::abs(a.value), std::abs(assembled), 1e-30});
                double bars = (a.abs_err_est + s.abs_err_est +
                               std::abs(K) * (std::abs(sn) * j.abs_err_est +
                                              std::abs(cs) * y.abs_err_est)) /
                              mag;
                record(res, rel_gap(a.value, assembled), bars, tol, label);
            } else {
                // two descending routes to S_{mu+2,nu}
                double r = rng.uni(20.0, 60.0);
                LogPoint z{complex(std::log(r), rng.uni(-0.9 * pi, 0.9 * pi))};
                std::snprintf(label, sizeof label,
                              "asymptotic recurrence S(mu=%s,nu=%s) |zeta|=%.3g",
                              fmt_c(mu).c_str(), fmt_c(nu).c_str(), r);
                Eval base = lommel_asymptotic(mu, nu, z);
                Eval stepped = lommel_recurrence_step(mu, nu, z, base);
                Eval direct = lommel_asymptotic(mu + 2.0, nu, z);
                double mag = std::max({std::abs(direct.value),
                                       std::abs(stepped.value), 1e-30});
                double bars = (direct.abs_err_est + stepped.abs_err_est) / mag;
                record(res, rel_gap(direct.value, stepped.value), bars, tol,
                       label);
            }
        } catch (const Error& e) {
            record_throw(res, e, label);
        }
    }
}

void suite_ode(SuiteResult* res, int samples, Rng& rng, double tol) {
    for (int k = 0; k < samples; ++k) {
        SolutionSpec sol;
        double lr = rng.uni(0.5, 2.0), lph = rng.uni(-2.4, 2.4);
        double mr = rng.uni(0.4, 1.5), mph = rng.uni(-0.6, 0.6);
        sol.spec.L = std::polar(lr, lph);
        sol.spec.M = std::polar(mr, mph);
        sol.spec.N = rng.box(-0.8, 0.8, -0.8, 0.8);
        sol.spec.nu = off_axis(rng, -1.8, 1.8);
        sol.A = rng.pick(0, 2) == 0 ? complex(0.0) : rng.box(-2, 2, -2, 2);
        sol.B = rng.pick(0, 2) == 0 ? complex(0.0) : rng.box(-2, 2, -2, 2);
        int nf = rng.pick(1, 2);
        for (int j = 0; j < nf; ++j) {
            complex mu = off_axis(rng, -2.2, 2.2);
            if (j == 1 &&
                std::abs(mu.real() - sol.spec.forcing[0].mu.real()) < 0.1)
                mu += 0.35;
            sol.spec.forcing.push_back({rng.box(-2, 2, -2, 2), mu});
        }
        double im_cap = std::min(pi / std::abs(sol.spec.M), 2.5);
        char label[200];
        std::snprintf(label, sizeof label,
                      "ode residual L=%s M=%s N=%s nu=%s terms=%d",
                      fmt_c(sol.spec.L).c_str(), fmt_c(sol.spec.M).c_str(),
                      fmt_c(sol.spec.N).c_str(), fmt_c(sol.spec.nu).c_str(),
                      nf);
        try {
            Evaluator f = general_solution(sol);
            double err = 0.0;
            for (int t = 0; t < 3; ++t) {
                complex z(rng.uni(-1.6, 1.6), rng.uni(-im_cap, im_cap));
                err = std::max(err, ode_residual(sol.spec, f, z));
            }
            record(res, err, 0.0, tol, label);
        } catch (const Error& e) {
            record_throw(res, e, label);
        }
    }
}

using SuiteFn = void (*)(SuiteResult*, int, Rng&, double);

struct SuiteEntry {
    const char* name;
    SuiteFn fn;
    double default_tol;
};

const SuiteEntry kSuites[] = {
    {"ode", suite_ode, 1e-6},
    {"recurrence", suite_recurrence, 1e-9},
    {"continuation", suite_continuation, 1e-7},
    {"parity", suite_parity, 1e-9},
    {"terminating", suite_terminating, 1e-8},
    {"relations", suite_relations, 1e-8},
    {"asymptotic", suite_asymptotic, 1e-6},
};

}  // namespace

double suite_default_tol(const std::string& name) {
    for (const SuiteEntry& s : kSuites)
        if (name == s.name) return s.default_tol;
    if (name == "all") return 0.0;  // each member keeps its own default
    throw UsageError("unknown suite: " + name);
}

std::vector<std::string> suite_names() {
    std::vector<std::string> v;
    for (const SuiteEntry& s : kSuites) v.emplace_back(s.name);
    return v;
}

SuiteResult run_suite(const std::string& name, int samples,
                      unsigned long long seed, double tol) {
    if (samples < 1) throw UsageError("samples must be positive");
    if (name == "all") {
        SuiteResult all;
        all.suite = "all";
        int idx = 0;
        for (const SuiteEntry& s : kSuites) {
            SuiteResult r = run_suite(s.name, samples, seed + 101 * idx++, tol);
            all.pass += r.pass;
            all.fail += r.fail;
            if (r.worst_error > all.worst_error) {
                all.worst_error = r.worst_error;
                all.worst_case = r.worst_case;
            }
        }
        return all;
    }
    for (const SuiteEntry& s : kSuites) {
        if (name != s.name) continue;
        SuiteResult res;
        res.suite = name;
        Rng rng(seed);
        s.fn(&res, samples, rng, tol > 0.0 ? tol : s.default_tol);
        return res;
    }
    throw UsageError("unknown suite: " + name);
}

}  // namespace lommel
