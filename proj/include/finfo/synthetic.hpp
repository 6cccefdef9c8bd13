#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "finfo/errors.hpp"
#include "finfo/rng.hpp"
#include "finfo/series.hpp"

namespace finfo {

/// Stochastic processes with closed-form information quantities.
enum class GeneratorKind {
    iid_gaussian,
    iid_uniform,
    correlated_gaussian_pair,
    ar1,
    coupled_lag_pair,
    variance_switch
};

/// Analytic quantity to evaluate for a generator.
enum class OracleQuantity { entropy, mi_lag1, te_x_to_y, kl_pre_post };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::iid_gaussian;
    std::size_t n = 1000;
    std::uint64_t seed = 0;
    double sigma = 1.0;      ///< iid_gaussian / ar1 innovation / pair scale
    double a = 0.0, b = 1.0; ///< iid_uniform support
    double rho = 0.0;        ///< correlated_gaussian_pair
    double phi = 0.0;        ///< ar1 coefficient
    double coupling = 0.0;   ///< coupled_lag_pair: y_{t+1} = coupling * x_t + eps_t
    std::size_t switch_point = 0;
    double sigma_pre = 0.01, sigma_post = 0.03;

    void validate() const {
        if (n < 2) throw validation_error("GeneratorSpec: n must be >= 2");
        switch (kind) {
            case GeneratorKind::iid_gaussian:
                if (!(sigma > 0.0)) throw validation_error("GeneratorSpec: sigma must be > 0");
                break;
            case GeneratorKind::iid_uniform:
                if (!(b > a)) throw validation_error("GeneratorSpec: need b > a");
                break;
            case GeneratorKind::correlated_gaussian_pair:
                if (!(std::abs(rho) < 1.0)) throw validation_error("GeneratorSpec: need |rho| < 1");
                break;
            case GeneratorKind::ar1:
                if (!(std::abs(phi) < 1.0)) throw validation_error("GeneratorSpec: need |phi| < 1");
                if (!(sigma > 0.0)) throw validation_error("GeneratorSpec: sigma must be > 0");
                break;
            case GeneratorKind::coupled_lag_pair:
                if (!(sigma > 0.0)) throw validation_error("GeneratorSpec: sigma must be > 0");
                break;
            case GeneratorKind::variance_switch:
                if (switch_point == 0 || switch_point >= n) {
                    throw validation_error("GeneratorSpec: switch_point must lie inside (0, n)");
                }
                if (!(sigma_pre > 0.0) || !(sigma_post > 0.0)) {
                    throw validation_error("GeneratorSpec: sigma_pre/sigma_post must be > 0");
                }
                break;
        }
    }
};

namespace detail {

inline std::vector<Timestamp> index_timestamps(std::size_t n) {
    std::vector<Timestamp> ts(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string s = std::to_string(i);
        ts[i] = "t" + std::string(8 - std::min<std::size_t>(8, s.size()), '0') + s;
    }
    return ts;
}

} // namespace detail

/// A generated series, or a pair for the two-stream kinds.
struct GeneratedSeries {
    ReturnSeries primary;
    std::optional<ReturnSeries> secondary;

    bool is_pair() const noexcept { return secondary.has_value(); }
};

/// Deterministic sample path for the given spec.
inline GeneratedSeries generate(const GeneratorSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const auto ts = detail::index_timestamps(spec.n);
    std::vector<double> x(spec.n);

    switch (spec.kind) {
        case GeneratorKind::iid_gaussian:
            for (auto& v : x) v = spec.sigma * rng.normal();
            return {ReturnSeries{ts, std::move(x)}, std::nullopt};
        case GeneratorKind::iid_uniform:
            for (auto& v : x) v = spec.a + (spec.b - spec.a) * rng.uniform();
            return {ReturnSeries{ts, std::move(x)}, std::nullopt};
        case GeneratorKind::ar1: {
            x[0] = spec.sigma / std::sqrt(1.0 - spec.phi * spec.phi) * rng.normal();
            for (std::size_t t = 1; t < spec.n; ++t) {
                x[t] = spec.phi * x[t - 1] + spec.sigma * rng.normal();
            }
            return {ReturnSeries{ts, std::move(x)}, std::nullopt};
        }
        case GeneratorKind::variance_switch: {
            for (std::size_t t = 0; t < spec.n; ++t) {
                x[t] = (t < spec.switch_point ? spec.sigma_pre : spec.sigma_post) * rng.normal();
            }
            return {ReturnSeries{ts, std::move(x)}, std::nullopt};
        }
        case GeneratorKind::correlated_gaussian_pair: {
            std::vector<double> y(spec.n);
            const double ortho = std::sqrt(1.0 - spec.rho * spec.rho);
            for (std::size_t t = 0; t < spec.n; ++t) {
                const double z1 = rng.normal();
                const double z2 = rng.normal();
                x[t] = spec.sigma * z1;
                y[t] = spec.sigma * (spec.rho * z1 + ortho * z2);
            }
            return {ReturnSeries{ts, std::move(x)}, ReturnSeries{ts, std::move(y)}};
        }
        case GeneratorKind::coupled_lag_pair: {
            std::vector<double> y(spec.n);
            for (auto& v : x) v = spec.sigma * rng.normal();
            y[0] = spec.sigma * rng.normal();
            for (std::size_t t = 1; t < spec.n; ++t) {
                y[t] = spec.coupling * x[t - 1] + spec.sigma * rng.normal();
            }
            return {ReturnSeries{ts, std::move(x)}, ReturnSeries{ts, std::move(y)}};
        }
    }
    throw validation_error("generate: unknown generator kind");
}

/// Analytic value of the requested information quantity, in nats.
inline double closed_form(const GeneratorSpec& spec, OracleQuantity quantity) {
    spec.validate();
    constexpr double two_pi_e = 2.0 * 3.14159265358979323846 * 2.71828182845904523536;
    switch (quantity) {
        case OracleQuantity::entropy:
            switch (spec.kind) {
                case GeneratorKind::iid_gaussian:
                    return 0.5 * std::log(two_pi_e * spec.sigma * spec.sigma);
                case GeneratorKind::iid_uniform:
                    return std::log(spec.b - spec.a);
                case GeneratorKind::ar1: {
                    const double var = spec.sigma * spec.sigma / (1.0 - spec.phi * spec.phi);
                    return 0.5 * std::log(two_pi_e * var);
                }
                default:
                    break;
            }
            break;
        case OracleQuantity::mi_lag1:
            if (spec.kind == GeneratorKind::ar1) {
                return -0.5 * std::log(1.0 - spec.phi * spec.phi);
            }
            if (spec.kind == GeneratorKind::iid_gaussian ||
                spec.kind == GeneratorKind::iid_uniform) {
                return 0.0;
            }
            if (spec.kind == GeneratorKind::correlated_gaussian_pair) {
                // Contemporaneous MI of the pair, not a lag quantity.
                return -0.5 * std::log(1.0 - spec.rho * spec.rho);
            }
            break;
        case OracleQuantity::te_x_to_y:
            if (spec.kind == GeneratorKind::coupled_lag_pair) {
                const double c = spec.coupling;
                return 0.5 * std::log(1.0 + c * c); // sigma_x == sigma_eps
            }
            if (spec.kind == GeneratorKind::iid_gaussian) return 0.0;
            break;
        case OracleQuantity::kl_pre_post:
            if (spec.kind == GeneratorKind::variance_switch) {
                const double r = (spec.sigma_post * spec.sigma_post) /
                                 (spec.sigma_pre * spec.sigma_pre);
                return 0.5 * (r + std::log(1.0 / r) - 1.0);
            }
            break;
    }
    throw unsupported_quantity_error("closed_form: quantity undefined for this generator kind");
}

} // namespace finfo
