#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "finfo/special.hpp"

using Catch::Approx;

namespace {

// Independent series oracle for psi(x): psi(x) = -gamma + sum_{n>=0} (1/(n+1) - 1/(n+x)).
double digamma_series(double x) {
    const double euler_gamma = 0.57721566490153286;
    double sum = -euler_gamma;
    for (long n = 0; n < 20000000; ++n) {
        sum += 1.0 / (n + 1.0) - 1.0 / (n + x);
    }
    return sum;
}

} // namespace

TEST_CASE("digamma matches the defining series") {
    // Series tail after 2e7 terms is ~ (x-1)/2e7, well below 1e-6.
    CHECK(finfo::digamma(1.0) == Approx(digamma_series(1.0)).margin(1e-6));
    CHECK(finfo::digamma(0.5) == Approx(digamma_series(0.5)).margin(1e-6));
    CHECK(finfo::digamma(3.7) == Approx(digamma_series(3.7)).margin(1e-6));
}

TEST_CASE("digamma closed-form anchors") {
    const double euler_gamma = 0.57721566490153286;
    CHECK(finfo::digamma(1.0) == Approx(-euler_gamma).epsilon(1e-10));
    // psi(0.5) = -gamma - 2 ln 2
    CHECK(finfo::digamma(0.5) == Approx(-euler_gamma - 2.0 * std::log(2.0)).epsilon(1e-10));
    // Large-argument check against the asymptotic leading terms.
    CHECK(finfo::digamma(1e6) == Approx(std::log(1e6) - 0.5e-6).epsilon(1e-12));
}

TEST_CASE("digamma recurrence psi(x+1) = psi(x) + 1/x") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 7.9, 42.0}) {
        CHECK(finfo::digamma(x + 1.0) == Approx(finfo::digamma(x) + 1.0 / x).epsilon(1e-12));
    }
}

TEST_CASE("digamma rejects non-positive arguments") {
    CHECK_THROWS_AS(finfo::digamma(0.0), finfo::validation_error);
    CHECK_THROWS_AS(finfo::digamma(-1.5), finfo::validation_error);
}

TEST_CASE("unit ball volumes") {
    CHECK(finfo::unit_ball_volume(1) == Approx(2.0).epsilon(1e-12));
    CHECK(finfo::unit_ball_volume(2) == Approx(3.14159265358979324).epsilon(1e-12));
    CHECK(finfo::unit_ball_volume(3) == Approx(4.0 * 3.14159265358979324 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(finfo::unit_ball_volume(0), finfo::validation_error);
}
