#include "lommel/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "lommel/bessel.hpp"
#include "lommel/lommel.hpp"
#include "lommel/ode.hpp"
#include "lommel/special_polys.hpp"
#include "lommel/verify.hpp"

namespace lommel {
namespace {

std::string jnum(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string jc(complex c) { return "[" + jnum(c.real()) + "," + jnum(c.imag()) + "]"; }

std::string jstr(const std::string& s) {
    std::string o = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': o += "\\\""; break;
            case '\\': o += "\\\\"; break;
            case '\n': o += "\\n"; break;
            case '\t': o += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char b[8];
                    std::snprintf(b, sizeof b, "\\u%04x", ch);
                    o += b;
                } else {
                    o += ch;
                }
        }
    }
    return o + "\"";
}

double parse_real(const std::string& s) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

// complex flags are RE or RE,IM
complex parse_complex(const std::string& s) {
    size_t comma = s.find(',');
    if (comma == std::string::npos) return {parse_real(s), 0.0};
    return {parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1))};
}

// "mu1:sigma1;mu2:sigma2", each half a complex literal
std::vector<Forcing> parse_forcing(const std::string& s) {
    std::vector<Forcing> out;
    if (s.empty()) return out;
    size_t start = 0;
    while (start <= s.size()) {
        size_t semi = s.find(';', start);
        std::string item =
            s.substr(start, semi == std::string::npos ? semi : semi - start);
        size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw UsageError("forcing term '" + item + "' needs mu:sigma");
        Forcing f;
        f.mu = parse_complex(item.substr(0, colon));
        f.sigma = parse_complex(item.substr(colon + 1));
        out.push_back(f);
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

std::string fmt_c(complex c) {
    char buf[80];
    if (c.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.6g", c.real());
    else
        std::snprintf(buf, sizeof buf, "%.6g%+.6gi", c.real(), c.imag());
    return buf;
}

std::string solution_string(const SolutionSpec& sol) {
    std::string s = "f(z) = ";
    if (std::abs(sol.spec.N) != 0.0)
        s += "e^{-(" + fmt_c(sol.spec.N) + ")z} ";
    std::string nu = fmt_c(sol.spec.nu);
    std::vector<std::string> parts;
    if (std::abs(sol.A) != 0.0)
        parts.push_back("(" + fmt_c(sol.A) + ") J_{" + nu + "}");
    if (std::abs(sol.B) != 0.0)
        parts.push_back("(" + fmt_c(sol.B) + ") Y_{" + nu + "}");
    for (const Forcing& f : sol.spec.forcing) {
        if (std::abs(f.sigma) == 0.0) continue;
        parts.push_back("(" + fmt_c(f.sigma) + ") S_{" + fmt_c(f.mu) + "," +
                        nu + "}");
    }
    if (parts.empty()) {
        s += "0";
        return s;
    }
    s += "[";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += " + ";
        s += parts[i];
    }
    s += "](zeta), zeta = (" + fmt_c(sol.spec.L) + ") e^{(" +
         fmt_c(sol.spec.M) + ")z}";
    return s;
}

struct EvalArgs {
    std::string fn;
    std::string mu, nu, n, w, zeta;
    int branch = 0;
    bool csv = false;
};

struct SpecArgs {
    std::string L, M, N = "0", nu;
    std::string forcing;
    std::string A = "0", B = "0";
};

SolutionSpec build_solution(const SpecArgs& a) {
    SolutionSpec sol;
    sol.A = parse_complex(a.A);
    sol.B = parse_complex(a.B);
    sol.spec.L = parse_complex(a.L);
    sol.spec.M = parse_complex(a.M);
    sol.spec.N = parse_complex(a.N);
    sol.spec.nu = parse_complex(a.nu);
    sol.spec.forcing = parse_forcing(a.forcing);
    return sol;
}

LogPoint eval_point(const EvalArgs& a) {
    if (!a.w.empty() && !a.zeta.empty())
        throw UsageError("--w and --zeta are mutually exclusive");
    LogPoint pt;
    if (!a.w.empty()) {
        complex w = parse_complex(a.w);
        pt = LogPoint{w};
    } else if (!a.zeta.empty()) {
        pt = LogPoint::from_zeta(parse_complex(a.zeta));
    } else {
        throw UsageError("one of --w or --zeta is required");
    }
    return branch_shift(pt, a.branch);
}

Eval eval_dispatch(const EvalArgs& a, LogPoint pt) {
    auto need = [&](const std::string& v, const char* flag) -> complex {
        if (v.empty())
            throw UsageError(std::string("--fn ") + a.fn + " needs " + flag);
        return parse_complex(v);
    };
    auto need_n = [&]() -> int {
        if (a.n.empty())
            throw UsageError(std::string("--fn ") + a.fn + " needs --n");
        double d = parse_real(a.n);
        int n = static_cast<int>(std::lround(d));
        if (d != n) throw UsageError("--n must be an integer");
        return n;
    };
    if (a.fn == "J") return bessel_j(need(a.nu, "--nu"), pt);
    if (a.fn == "Y") return bessel_y(need(a.nu, "--nu"), pt);
    if (a.fn == "H1") return hankel(1, need(a.nu, "--nu"), pt);
    if (a.fn == "H2") return hankel(2, need(a.nu, "--nu"), pt);
    if (a.fn == "s")
        return lommel_small_s(need(a.mu, "--mu"), need(a.nu, "--nu"), pt);
    if (a.fn == "S")
        return lommel_S(need(a.mu, "--mu"), need(a.nu, "--nu"), pt);
    if (a.fn == "struveH") return struve_h(need(a.nu, "--nu"), pt);
    if (a.fn == "struveK") return struve_k(need(a.nu, "--nu"), pt);
    if (a.fn == "neumannO") return neumann_o(need_n(), pt);
    if (a.fn == "schlafliS") return schlafli_s(need_n(), pt);
    if (a.fn == "gegenbauerA")
        return gegenbauer_a(need_n(), need(a.nu, "--nu"), pt);
    throw UsageError("unknown --fn '" + a.fn + "'");
}

int run_eval(const EvalArgs& a, std::ostream& out) {
    LogPoint pt = eval_point(a);
    if (a.csv) {
        // radial ray through the requested point, same accumulated argument
        out << "re_z,im_z,re_f,im_f,err\n";
        for (int k = 0; k <= 20; ++k) {
            double scale = 0.2 + 1.8 * (k / 20.0);
            LogPoint q{pt.w + std::log(scale)};
            complex zq = q.zeta();
            Eval e = eval_dispatch(a, q);
            out << jnum(zq.real()) << "," << jnum(zq.imag()) << ","
                << jnum(e.value.real()) << "," << jnum(e.value.imag()) << ","
                << jnum(e.abs_err_est) << "\n";
        }
        return 0;
    }
    Eval e = eval_dispatch(a, pt);
    out << "{\"value\":" << jc(e.value) << ",\"abs_err_est\":"
        << jnum(e.abs_err_est) << ",\"terms\":" << e.terms_used
        << ",\"method\":\"" << method_name(e.method) << "\"}\n";
    return 0;
}

int run_verify(const std::string& suite, int samples, unsigned long long seed,
               double tol, std::ostream& out) {
    SuiteResult r = run_suite(suite, samples, seed, tol);
    out << "{\"suite\":" << jstr(r.suite) << ",\"pass\":" << r.pass
        << ",\"fail\":" << r.fail << ",\"worst\":{\"case\":"
        << jstr(r.worst_case) << ",\"error\":" << jnum(r.worst_error)
        << "}}\n";
    return r.fail == 0 ? 0 : 1;
}

int run_classify(const SpecArgs& a, std::ostream& out) {
    SolutionSpec sol = build_solution(a);
    SubnormalVerdict v = classify_subnormal(sol);
    std::string reason;
    switch (v.reason) {
        case NotSubnormalReason::none:
            reason = "A = B = 0 and every forcing index terminates";
            break;
        case NotSubnormalReason::nonzero_ab:
            reason = "nonzero homogeneous coefficients A, B";
            break;
        case NotSubnormalReason::nonterminating_index:
            reason = "forcing index " + std::to_string(v.bad_index + 1) +
                     " does not terminate";
            break;
    }
    out << "{\"verdict\":"
        << (v.verdict == Verdict::subnormal ? "\"subnormal\""
                                            : "\"not_subnormal\"")
        << ",\"reason\":" << jstr(reason) << ",\"terms\":[";
    for (size_t i = 0; i < v.terms.size(); ++i) {
        const TerminatingLommel& t = v.terms[i];
        if (i) out << ",";
        out << "{\"mu\":" << jc(t.mu) << ",\"nu\":" << jc(t.nu)
            << ",\"p\":" << t.p << ",\"coeffs\":[";
        for (size_t k = 0; k < t.c.size(); ++k) {
            if (k) out << ",";
            out << jc(t.c[k]);
        }
        out << "]}";
    }
    out << "],\"solution_string\":" << jstr(solution_string(sol)) << "}\n";
    return 0;
}

int run_probe(const SpecArgs& a, int n_max, const std::string& fn,
              std::ostream& out) {
    SolutionSpec sol = build_solution(a);
    GrowthProbe p;
    if (fn.empty()) {
        p = growth_probe(sol, n_max);
    } else if (fn == "struveH") {
        p = growth_probe_struve(sol.spec, n_max);
    } else {
        throw UsageError("probe --fn only accepts struveH");
    }
    out << "{\"samples\":[";
    for (size_t i = 0; i < p.samples.size(); ++i) {
        const GrowthSample& s = p.samples[i];
        if (i) out << ",";
        out << "{\"n\":" << s.n << ",\"r_n\":" << jnum(s.r_n)
            << ",\"logM_over_r\":" << jnum(s.log_over_r)
            << ",\"loglogM_over_r\":" << jnum(s.loglog_over_r) << "}";
    }
    out << "],\"tail\":" << jnum(p.tail) << ",\"expected_if_unbounded\":"
        << jnum(p.expected_if_unbounded)
        << ",\"bounded\":" << (p.bounded ? "true" : "false")
        << ",\"achieved_n\":" << p.achieved_n << "}\n";
    return 0;
}

int run_table1(int case_id, int p, const std::string& sigma, bool csv,
               std::ostream& out) {
    QuantizationRow row = quantization_case(case_id, p, parse_complex(sigma));
    if (csv) {
        out << "re_z,im_z,re_f,im_f,err\n";
        for (int k = 0; k <= 20; ++k) {
            complex z(-2.0 + 4.0 * (k / 20.0), 0.0);
            Eval e = row.f(z);
            out << jnum(z.real()) << "," << jnum(z.imag()) << ","
                << jnum(e.value.real()) << "," << jnum(e.value.imag()) << ","
                << jnum(e.abs_err_est) << "\n";
        }
        return 0;
    }
    const complex zs[3] = {{0.3, 0.0}, {0.9, 0.6}, {-0.5, 1.0}};
    out << "{\"K\":" << jnum(row.K.real()) << ",\"solution_string\":"
        << jstr(row.description) << ",\"residual_at\":[";
    for (int i = 0; i < 3; ++i) {
        if (i) out << ",";
        double r = ode_residual(row.solution.spec, row.f, zs[i]);
        out << "{\"z\":" << jc(zs[i]) << ",\"residual\":" << jnum(r) << "}";
    }
    out << "]}\n";
    return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Branch-aware Lommel, Bessel and Struve function toolkit"};
    app.require_subcommand(1);

    EvalArgs ea;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate one function");
    eval_cmd->add_option("--fn", ea.fn)->required();
    eval_cmd->add_option("--mu", ea.mu);
    eval_cmd->add_option("--nu", ea.nu);
    eval_cmd->add_option("--n", ea.n);
    eval_cmd->add_option("--w", ea.w);
    eval_cmd->add_option("--zeta", ea.zeta);
    eval_cmd->add_option("--branch", ea.branch);
    eval_cmd->add_flag("--csv", ea.csv);

    std::string suite;
    int samples = 50;
    unsigned long long seed = 0;
    double tol = 0.0;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run an identity suite");
    verify_cmd->add_option("--suite", suite)->required();
    verify_cmd->add_option("--samples", samples);
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--tol", tol);

    SpecArgs ca;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "subnormality verdict for a spec");
    classify_cmd->add_option("--L", ca.L)->required();
    classify_cmd->add_option("--M", ca.M)->required();
    classify_cmd->add_option("--N", ca.N);
    classify_cmd->add_option("--nu", ca.nu)->required();
    classify_cmd->add_option("--forcing", ca.forcing);
    classify_cmd->add_option("--A", ca.A);
    classify_cmd->add_option("--B", ca.B);

    SpecArgs pa;
    int n_max = 8;
    std::string probe_fn;
    CLI::App* probe_cmd =
        app.add_subcommand("probe", "sample the growth sequence");
    probe_cmd->add_option("--L", pa.L)->required();
    probe_cmd->add_option("--M", pa.M)->required();
    probe_cmd->add_option("--N", pa.N);
    probe_cmd->add_option("--nu", pa.nu)->required();
    probe_cmd->add_option("--forcing", pa.forcing);
    probe_cmd->add_option("--A", pa.A);
    probe_cmd->add_option("--B", pa.B);
    probe_cmd->add_option("--n-max", n_max);
    probe_cmd->add_option("--fn", probe_fn);

    int case_id = 0, pp = 0;
    std::string sigma = "1";
    bool t1csv = false;
    CLI::App* table_cmd =
        app.add_subcommand("table1", "quantized closed-form families");
    table_cmd->add_option("--case", case_id)->required();
    table_cmd->add_option("--p", pp)->required();
    table_cmd->add_option("--sigma", sigma);
    table_cmd->add_flag("--csv", t1csv);

    std::vector<std::string> argv_store;
    argv_store.emplace_back("lommel");
    for (const std::string& a : args) argv_store.push_back(a);
    std::vector<const char*> argv;
    argv.reserve(argv_store.size());
    for (const std::string& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "{\"error\":\"usage\",\"message\":" << jstr(e.what()) << "}\n";
        return 64;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(ea, out);
        if (verify_cmd->parsed())
            return run_verify(suite, samples, seed, tol, out);
        if (classify_cmd->parsed()) return run_classify(ca, out);
        if (probe_cmd->parsed()) return run_probe(pa, n_max, probe_fn, out);
        if (table_cmd->parsed()) return run_table1(case_id, pp, sigma, t1csv, out);
        err << "{\"error\":\"usage\",\"message\":\"missing subcommand\"}\n";
        return 64;
    } catch (const UsageError& e) {
        err << "{\"error\":\"usage\",\"message\":" << jstr(e.what()) << "}\n";
        return 64;
    } catch (const Error& e) {
        out << "{\"error\":" << jstr(e.code()) << ",\"message\":"
            << jstr(e.what()) << "}\n";
        return 2;
    } catch (const std::exception& e) {
        out << "{\"error\":\"internal\",\"message\":" << jstr(e.what())
            << "}\n";
        return 2;
    }
}

}  // namespace lommel
