#pragma once

#include <string>
#include <vector>

#include "lommel/core.hpp"

namespace lommel {

struct SuiteResult {
    std::string suite;
    long pass = 0;
    long fail = 0;
    std::string worst_case;  // label of the sample with the largest error
    double worst_error = 0.0;
};

// Tolerance used when the caller passes tol <= 0.
double suite_default_tol(const std::string& name);

// Randomized identity batteries; deterministic for a fixed seed.  Valid
// names: ode, recurrence, continuation, parity, terminating, relations,
// asymptotic, all.  Unknown names throw UsageError.
SuiteResult run_suite(const std::string& name, int samples,
                      unsigned long long seed, double tol);

std::vector<std::string> suite_names();

}  // namespace lommel
