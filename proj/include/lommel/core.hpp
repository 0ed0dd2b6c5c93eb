#pragma once

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lommel {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double ln2 = 0.69314718055994530942;

// Largest x with exp(x) finite in double.
inline constexpr double exp_overflow_bound = 708.0;

class Error : public std::runtime_error {
public:
    Error(const char* code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    const char* code() const noexcept { return code_; }

private:
    const char* code_;
};

struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error("pole", w) {}
};
struct OverflowError : Error {
    explicit OverflowError(const std::string& w) : Error("overflow", w) {}
};
struct NonconvergenceError : Error {
    explicit NonconvergenceError(const std::string& w) : Error("nonconvergence", w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct SingularParamsError : Error {
    explicit SingularParamsError(const std::string& w) : Error("singular_params", w) {}
};
struct NotTerminatingError : Error {
    explicit NotTerminatingError(const std::string& w) : Error("not_terminating", w) {}
};
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& w) : Error("degenerate", w) {}
};
struct UsageError : Error {
    explicit UsageError(const std::string& w) : Error("usage", w) {}
};
struct HypothesisError : Error {
    explicit HypothesisError(const std::string& w) : Error("hypothesis", w) {}
};

// A point on the Riemann surface of log: zeta = exp(w).  Carrying w instead of
// zeta makes every multi-valued function here single-valued.
struct LogPoint {
    complex w{};

    static LogPoint from_zeta(complex zeta) {
        if (zeta == 0.0)
            throw DomainError("LogPoint undefined at zeta = 0");
        return LogPoint{std::log(zeta)};
    }

    complex zeta() const { return std::exp(w); }
    double abs_zeta() const { return std::exp(w.real()); }
    // Accumulated argument of zeta, not reduced mod 2 pi.
    double arg() const { return w.imag(); }
};

// zeta -> zeta * exp(-i m pi), i.e. m half-turns clockwise.
inline LogPoint branch_shift(LogPoint pt, int m) {
    return LogPoint{pt.w - complex(0.0, m * pi)};
}

// zeta^a = exp(a w), resolved by the branch stored in the point.
inline complex logpoint_pow(LogPoint pt, complex a) {
    complex e = a * pt.w;
    if (e.real() > exp_overflow_bound)
        throw OverflowError("logpoint_pow: exponent " + std::to_string(e.real()) +
                            " exceeds double range");
    return std::exp(e);
}

enum class Method { closed_form, series, asymptotic, continuation, recurrence };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::series: return "series";
        case Method::asymptotic: return "asymptotic";
        case Method::continuation: return "continuation";
        case Method::recurrence: return "recurrence";
    }
    return "unknown";
}

struct Eval {
    complex value{};
    double abs_err_est = 0.0;
    int terms_used = 0;
    Method method = Method::series;
};

// Series length cap, overridable through LOMMEL_TERM_CAP.
inline int term_cap() {
    static const int cap = [] {
        if (const char* s = std::getenv("LOMMEL_TERM_CAP")) {
            char* end = nullptr;
            long v = std::strtol(s, &end, 10);
            if (end != s && *end == '\0' && v >= 8 && v <= 1000000)
                return static_cast<int>(v);
        }
        return 500;
    }();
    return cap;
}

// Distance to the nearest integer along the real axis; the integer is written
// to *nearest when given.  Complex inputs are measured against real integers.
inline double integer_distance(complex z, long* nearest = nullptr) {
    double n = std::round(z.real());
    if (nearest) *nearest = static_cast<long>(n);
    return std::abs(z - complex(n, 0.0));
}

}  // namespace lommel
