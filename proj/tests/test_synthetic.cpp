#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "finfo/synthetic.hpp"

using Catch::Approx;
using namespace finfo;

namespace {

double mean(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    return m / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
    const double m = mean(v);
    double var = 0.0;
    for (double x : v) var += (x - m) * (x - m);
    return std::sqrt(var / static_cast<double>(v.size()));
}

double autocorr1(const std::vector<double>& v) {
    const double m = mean(v);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 1; t < v.size(); ++t) num += (v[t] - m) * (v[t - 1] - m);
    for (double x : v) den += (x - m) * (x - m);
    return num / den;
}

} // namespace

TEST_CASE("generation is reproducible and seed-sensitive") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::ar1;
    spec.n = 500;
    spec.phi = 0.5;
    spec.seed = 42;
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(a.primary.values == b.primary.values);
    CHECK(a.primary.timestamps == b.primary.timestamps);
    spec.seed = 43;
    CHECK(generate(spec).primary.values != a.primary.values);
}

TEST_CASE("timestamps are zero-padded and strictly increasing") {
    GeneratorSpec spec;
    spec.n = 1000;
    const auto s = generate(spec).primary;
    s.validate(); // includes the strict ordering check
    CHECK(s.timestamps.front() == "t00000000");
    CHECK(s.timestamps.back() == "t00000999");
}

TEST_CASE("sample moments match the generating processes") {
    SECTION("iid Gaussian scale") {
        GeneratorSpec spec;
        spec.n = 20000;
        spec.sigma = 0.02;
        spec.seed = 3;
        const auto s = generate(spec).primary;
        CHECK(mean(s.values) == Approx(0.0).margin(5e-4));
        CHECK(stddev(s.values) == Approx(0.02).epsilon(0.05));
    }
    SECTION("uniform support") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::iid_uniform;
        spec.n = 20000;
        spec.a = -1.0;
        spec.b = 3.0;
        spec.seed = 4;
        const auto s = generate(spec).primary;
        double lo = s.values[0];
        double hi = s.values[0];
        for (double v : s.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(lo >= -1.0);
        CHECK(hi < 3.0);
        CHECK(mean(s.values) == Approx(1.0).margin(0.05));
    }
    SECTION("AR(1) autocorrelation and stationary start") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::ar1;
        spec.n = 20000;
        spec.phi = 0.8;
        spec.seed = 5;
        const auto s = generate(spec).primary;
        CHECK(autocorr1(s.values) == Approx(0.8).margin(0.05));
        // Stationary variance sigma^2 / (1 - phi^2).
        CHECK(stddev(s.values) == Approx(1.0 / std::sqrt(1.0 - 0.64)).epsilon(0.05));
    }
    SECTION("correlated pair hits its correlation") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::correlated_gaussian_pair;
        spec.n = 20000;
        spec.rho = 0.9;
        spec.seed = 6;
        const auto pair = generate(spec);
        REQUIRE(pair.is_pair());
        const auto& x = pair.primary.values;
        const auto& y = pair.secondary->values;
        double num = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) num += x[i] * y[i];
        const double corr =
            num / static_cast<double>(x.size()) / (stddev(x) * stddev(y));
        CHECK(corr == Approx(0.9).margin(0.01));
    }
    SECTION("variance switch changes the scale at the switch point") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::variance_switch;
        spec.n = 4000;
        spec.switch_point = 2000;
        spec.seed = 7;
        const auto s = generate(spec).primary;
        std::vector<double> pre(s.values.begin(), s.values.begin() + 2000);
        std::vector<double> post(s.values.begin() + 2000, s.values.end());
        CHECK(stddev(pre) == Approx(0.01).epsilon(0.1));
        CHECK(stddev(post) / stddev(pre) == Approx(3.0).margin(0.3));
    }
    SECTION("coupled pair regresses on the lagged source") {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::coupled_lag_pair;
        spec.n = 20000;
        spec.coupling = 0.8;
        spec.seed = 8;
        const auto pair = generate(spec);
        REQUIRE(pair.is_pair());
        const auto& x = pair.primary.values;
        const auto& y = pair.secondary->values;
        double num = 0.0;
        double den = 0.0;
        for (std::size_t t = 1; t < x.size(); ++t) {
            num += y[t] * x[t - 1];
            den += x[t - 1] * x[t - 1];
        }
        CHECK(num / den == Approx(0.8).margin(0.02));
    }
}

TEST_CASE("closed-form oracle values") {
    constexpr double two_pi_e = 2.0 * 3.14159265358979323846 * 2.71828182845904523536;

    GeneratorSpec g;
    g.kind = GeneratorKind::iid_gaussian;
    g.sigma = 1.0;
    CHECK(closed_form(g, OracleQuantity::entropy) ==
          Approx(0.5 * std::log(two_pi_e)).epsilon(1e-12));
    CHECK(closed_form(g, OracleQuantity::entropy) == Approx(1.418939).margin(1e-6));
    CHECK(closed_form(g, OracleQuantity::mi_lag1) == 0.0);
    CHECK(closed_form(g, OracleQuantity::te_x_to_y) == 0.0);

    GeneratorSpec u;
    u.kind = GeneratorKind::iid_uniform;
    u.a = 0.0;
    u.b = 2.0;
    CHECK(closed_form(u, OracleQuantity::entropy) == Approx(std::log(2.0)).epsilon(1e-12));

    GeneratorSpec ar;
    ar.kind = GeneratorKind::ar1;
    ar.phi = 0.8;
    CHECK(closed_form(ar, OracleQuantity::mi_lag1) ==
          Approx(-0.5 * std::log(0.36)).epsilon(1e-12));
    CHECK(closed_form(ar, OracleQuantity::entropy) ==
          Approx(0.5 * std::log(two_pi_e / 0.36)).epsilon(1e-12));

    GeneratorSpec pair;
    pair.kind = GeneratorKind::correlated_gaussian_pair;
    pair.rho = 0.9;
    CHECK(closed_form(pair, OracleQuantity::mi_lag1) ==
          Approx(-0.5 * std::log(0.19)).epsilon(1e-12));
    CHECK(closed_form(pair, OracleQuantity::mi_lag1) == Approx(0.8304).margin(1e-4));

    GeneratorSpec coupled;
    coupled.kind = GeneratorKind::coupled_lag_pair;
    coupled.coupling = 0.8;
    CHECK(closed_form(coupled, OracleQuantity::te_x_to_y) ==
          Approx(0.5 * std::log(1.64)).epsilon(1e-12));
    CHECK(closed_form(coupled, OracleQuantity::te_x_to_y) == Approx(0.247348).margin(1e-6));

    GeneratorSpec sw;
    sw.kind = GeneratorKind::variance_switch;
    sw.n = 100;
    sw.switch_point = 50;
    sw.sigma_pre = 0.01;
    sw.sigma_post = 0.03;
    // Variance ratio r = 9: 0.5 (r - ln r - 1) = 2.9014.
    CHECK(closed_form(sw, OracleQuantity::kl_pre_post) ==
          Approx(0.5 * (9.0 - std::log(9.0) - 1.0)).epsilon(1e-12));
}

TEST_CASE("quantities undefined for a generator are rejected") {
    GeneratorSpec g;
    g.kind = GeneratorKind::iid_gaussian;
    CHECK_THROWS_AS(closed_form(g, OracleQuantity::kl_pre_post), unsupported_quantity_error);
    GeneratorSpec u;
    u.kind = GeneratorKind::iid_uniform;
    CHECK_THROWS_AS(closed_form(u, OracleQuantity::te_x_to_y), unsupported_quantity_error);
    GeneratorSpec sw;
    sw.kind = GeneratorKind::variance_switch;
    sw.n = 100;
    sw.switch_point = 50;
    CHECK_THROWS_AS(closed_form(sw, OracleQuantity::entropy), unsupported_quantity_error);
}

TEST_CASE("generator parameter validation") {
    GeneratorSpec g;
    g.n = 1;
    CHECK_THROWS_AS(generate(g), validation_error);
    g.n = 100;
    g.sigma = 0.0;
    CHECK_THROWS_AS(generate(g), validation_error);

    GeneratorSpec u;
    u.kind = GeneratorKind::iid_uniform;
    u.a = 1.0;
    u.b = 1.0;
    CHECK_THROWS_AS(generate(u), validation_error);

    GeneratorSpec ar;
    ar.kind = GeneratorKind::ar1;
    ar.phi = 1.0;
    CHECK_THROWS_AS(generate(ar), validation_error);

    GeneratorSpec pair;
    pair.kind = GeneratorKind::correlated_gaussian_pair;
    pair.rho = 1.5;
    CHECK_THROWS_AS(generate(pair), validation_error);

    GeneratorSpec sw;
    sw.kind = GeneratorKind::variance_switch;
    sw.n = 100;
    sw.switch_point = 100;
    CHECK_THROWS_AS(generate(sw), validation_error);
    sw.switch_point = 0;
    CHECK_THROWS_AS(generate(sw), validation_error);
}
