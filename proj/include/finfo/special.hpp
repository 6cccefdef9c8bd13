#pragma once

#include <cmath>

#include "finfo/errors.hpp"

namespace finfo {

/// Digamma function psi(x) for x > 0, accurate to ~1e-12.
///
/// Small arguments are lifted into the asymptotic region by the recurrence
/// psi(x) = psi(x+1) - 1/x, then the Stirling-type series is applied.
inline double digamma(double x) {
    if (!(x > 0.0)) {
        throw validation_error("digamma: argument must be positive");
    }
    double result = 0.0;
    while (x < 8.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic series: log(x) - 1/(2x) - sum B_{2n} / (2n x^{2n})
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv
        - inv2 * (1.0 / 12.0
                  - inv2 * (1.0 / 120.0
                            - inv2 * (1.0 / 252.0
                                      - inv2 * (1.0 / 240.0
                                                - inv2 * (1.0 / 132.0)))));
    return result;
}

/// Volume of the unit-radius Euclidean ball in d dimensions: pi^{d/2} / Gamma(d/2 + 1).
inline double unit_ball_volume(int d) {
    if (d < 1) {
        throw validation_error("unit_ball_volume: dimension must be >= 1");
    }
    return std::pow(3.14159265358979323846, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

} // namespace finfo
