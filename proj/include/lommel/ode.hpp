#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lommel/core.hpp"
#include "lommel/lommel.hpp"

namespace lommel {

// f'' + 2N f' + [L^2 M^2 e^{2Mz} + (N^2 - nu^2 M^2)] f
//   = sum_j sigma_j L^{mu_j+1} M^2 e^{[M(mu_j+1)-N] z}
struct Forcing {
    complex sigma, mu;
};

struct OdeSpec {
    complex L, M, N, nu;
    std::vector<Forcing> forcing;
};

struct SolutionSpec {
    complex A, B;
    OdeSpec spec;
};

// Parameters after the substitution zeta = L e^{Mz}, y(zeta) = e^{Nz} f(z):
// zeta^2 y'' + zeta y' + (zeta^2 - nu^2) y = sum_j sigma_j zeta^{mu_j+1}.
struct TransformedOde {
    complex alpha, beta, gamma;  // the (L, M, N) substitution constants
    int index = 1;               // exponent multiplier; always 1 here
    complex nu;
    std::vector<Forcing> forcing;
};

TransformedOde lommel_transform(const OdeSpec& spec);

using Evaluator = std::function<Eval(complex)>;

// e^{-Nz} [A J_nu + B Y_nu + sum_j sigma_j S_{mu_j,nu}](L e^{Mz}), with the
// inner argument carried as the LogPoint w = log L + M z, single-valued in z.
Evaluator general_solution(const SolutionSpec& sol);

// Relative residual of the equation at z, derivatives by 6th-order central
// differences; denominator max(|f''|, |2Nf'|, |coeff f|, |RHS|, 1e-300).
double ode_residual(const OdeSpec& spec, const Evaluator& f, complex z);
double ode_residual(const SolutionSpec& sol, complex z);

enum class Verdict { subnormal, not_subnormal };
enum class NotSubnormalReason { none, nonzero_ab, nonterminating_index };

struct SubnormalVerdict {
    Verdict verdict = Verdict::not_subnormal;
    NotSubnormalReason reason = NotSubnormalReason::none;
    int bad_index = -1;  // forcing index when reason = nonterminating_index
    std::vector<TerminatingLommel> terms;
};

// Subnormal iff A = B = 0 and every nonzero-sigma index has mu_j + nu or
// mu_j - nu an odd positive integer (within 1e-10).
SubnormalVerdict classify_subnormal(const SolutionSpec& sol);

struct GrowthSample {
    int n = 0;
    double r_n = 0.0;
    double log_over_r = 0.0;     // log|f(z_n)| / r_n
    double loglog_over_r = 0.0;  // log log|f(z_n)| / r_n, 0 when log|f| <= 1
};

struct GrowthProbe {
    std::vector<GrowthSample> samples;
    double tail = 0.0;                  // last loglog_over_r
    double expected_if_unbounded = 0.0; // |M| / sqrt(2)
    bool bounded = false;
    int achieved_n = 0;
};

// Samples |f| along z_n = r_n e^{i theta}, theta = pi/4 - arg M, with r_n
// picked so that L e^{M z_n} lands on the ray arg = -pi/4 (or +pi/4 when
// C = (A-iB)/2 vanishes).  Magnitudes are assembled in the log domain, so the
// doubly exponential growth never overflows; sampling stops early if the
// inner argument itself leaves double range.
GrowthProbe growth_probe(const SolutionSpec& sol, int n_max);

// Same probe for f = e^{-Nz} H_nu(L e^{Mz}) (Struve composition).
GrowthProbe growth_probe_struve(const OdeSpec& spec, int n_max);

struct QuantizationRow {
    long k_num = 0, k_den = 1;  // K as an exact rational
    complex K;
    Evaluator f;                // closed form from the polynomial backends
    std::string description;
    SolutionSpec solution;      // the equivalent (A, B, forcing) assembly
};

// The four quantized families of f'' + (e^z - K) f = sigma 2^{mu-1} e^{(mu+1)z/2}:
//   1: mu = 1,  K = p^2,          f = 2 sigma e^{z/2} O_{2p}(2 e^{z/2})
//   2: mu = 0,  K = (2p+1)^2/4,   f = (2 sigma/(2p+1)) e^{z/2} O_{2p+1}(2 e^{z/2})
//   3: mu = -1, K = (p+1)^2,      f = (sigma/(4(p+1))) S_{2p+2}(2 e^{z/2})
//   4: mu = nu = p+1/2, K = (2p+1)^2/16,
//      f = sigma 2^{p-1/2} sqrt(pi) p! [H_{p+1/2} - Y_{p+1/2}](2 e^{z/2})
QuantizationRow quantization_case(int case_id, int p, complex sigma);

}  // namespace lommel
