#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "lommel/core.hpp"

namespace checks {

inline double rel_gap(lommel::complex got, lommel::complex want) {
    double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

inline lommel::LogPoint at(double re_w, double im_w) {
    return lommel::LogPoint{lommel::complex(re_w, im_w)};
}

}  // namespace checks

// Relative comparison that echoes both operands on failure.
#define CHECK_REL(got, want, tol)                                         \
    do {                                                                  \
        lommel::complex got_ = (got);                                     \
        lommel::complex want_ = (want);                                   \
        INFO("got  = ", got_.real(), " ", got_.imag(), "i");              \
        INFO("want = ", want_.real(), " ", want_.imag(), "i");            \
        CHECK(checks::rel_gap(got_, want_) <= (tol));                     \
    } while (0)
