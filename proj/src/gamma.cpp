#include "lommel/gamma.hpp"

#include <cmath>

namespace lommel {
namespace {

constexpr double kPoleTol = 1e-12;

bool near_nonpositive_integer(complex z, double tol) {
    if (z.real() > 0.5) return false;
    long n = 0;
    return integer_distance(z, &n) <= tol && n <= 0;
}

// log(sin(pi z)) with exp() exact; overflow-safe for large |Im z|.
complex log_sin_pi(complex z) {
    const complex i(0.0, 1.0);
    double y = z.imag();
    if (std::abs(y) < 20.0)
        return std::log(std::sin(pi * z));
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})   for Im z > 0
    if (y > 0.0)
        return complex(-ln2, pi / 2) - i * pi * z + std::log(1.0 - std::exp(2.0 * i * pi * z));
    return complex(-ln2, -pi / 2) + i * pi * z + std::log(1.0 - std::exp(-2.0 * i * pi * z));
}

complex cot_pi(complex z) {
    const complex i(0.0, 1.0);
    double y = z.imag();
    if (std::abs(y) < 20.0) {
        complex s = std::sin(pi * z);
        return std::cos(pi * z) / s;
    }
    // cot(pi z) = i (e^{2 i pi z} + 1) / (e^{2 i pi z} - 1), taking the decaying exponential
    if (y > 0.0) {
        complex e = std::exp(2.0 * i * pi * z);
        return i * (e + 1.0) / (e - 1.0);
    }
    complex e = std::exp(-2.0 * i * pi * z);
    return -i * (e + 1.0) / (e - 1.0);
}

// Stirling tail coefficients B_{2n} / (2n (2n-1)).
constexpr double kStirling[] = {
    1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680,
    1.0 / 1188, -691.0 / 360360, 1.0 / 156, -3617.0 / 122400,
};

complex log_gamma_shifted(complex z) {
    // pre: Re z >= 0.5.  Shift into |z| large enough for Stirling.
    complex acc = 0.0;
    while (z.real() < 12.0) {
        acc += std::log(z);
        z += 1.0;
    }
    complex inv2 = 1.0 / (z * z);
    complex tail = 0.0;
    complex power = 1.0 / z;
    for (double c : kStirling) {
        tail += c * power;
        power *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + tail - acc;
}

}  // namespace

complex log_gamma(complex z) {
    if (near_nonpositive_integer(z, kPoleTol))
        throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5)
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(pi) - log_sin_pi(z) - log_gamma_shifted(1.0 - z);
    return log_gamma_shifted(z);
}

complex gamma_fn(complex z) { return std::exp(log_gamma(z)); }

complex reciprocal_gamma(complex z) {
    if (near_nonpositive_integer(z, kPoleTol)) return 0.0;
    return std::exp(-log_gamma(z));
}

complex digamma(complex z) {
    if (near_nonpositive_integer(z, kPoleTol))
        throw PoleError("digamma: pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5)
        return digamma(1.0 - z) - pi * cot_pi(z);
    complex acc = 0.0;
    while (z.real() < 12.0) {
        acc += 1.0 / z;
        z += 1.0;
    }
    // psi(z) ~ log z - 1/(2z) - sum B_{2n} / (2n z^{2n})
    static constexpr double coeff[] = {
        1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
        1.0 / 132, -691.0 / 32760, 1.0 / 12,
    };
    complex inv2 = 1.0 / (z * z);
    complex tail = 0.0;
    complex power = inv2;
    for (double c : coeff) {
        tail += c * power;
        power *= inv2;
    }
    return std::log(z) - 0.5 / z - tail - acc;
}

complex trigamma(complex z) {
    if (near_nonpositive_integer(z, kPoleTol))
        throw PoleError("trigamma: pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5) {
        // psi'(z) + psi'(1-z) = pi^2 / sin^2(pi z)
        complex ls = log_sin_pi(z);
        complex csc2 = (ls.real() > 400.0) ? complex(0.0) : std::exp(-2.0 * ls);
        return pi * pi * csc2 - trigamma(1.0 - z);
    }
    complex acc = 0.0;
    while (z.real() < 12.0) {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    // psi'(z) ~ 1/z + 1/(2z^2) + sum B_{2n} / z^{2n+1}
    static constexpr double coeff[] = {
        1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30,
        5.0 / 66, -691.0 / 2730, 7.0 / 6,
    };
    complex inv = 1.0 / z;
    complex inv2 = inv * inv;
    complex tail = 0.0;
    complex power = inv * inv2;
    for (double c : coeff) {
        tail += c * power;
        power *= inv2;
    }
    return inv + 0.5 * inv2 + tail + acc;
}

complex pochhammer(complex a, int n) {
    if (n < 0)
        throw DomainError("pochhammer: negative length");
    complex p = 1.0;
    for (int k = 0; k < n; ++k) p *= a + static_cast<double>(k);
    return p;
}

}  // namespace lommel
