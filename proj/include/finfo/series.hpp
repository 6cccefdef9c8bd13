#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "finfo/errors.hpp"

namespace finfo {

using Timestamp = std::string;

namespace detail {

inline void check_strictly_increasing(const std::vector<Timestamp>& ts, const char* what) {
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (!(ts[i - 1] < ts[i])) {
            throw validation_error(std::string(what) + ": timestamps not strictly increasing at '" +
                                   ts[i] + "'");
        }
    }
}

} // namespace detail

/// Time-indexed real values; the generic output of every rolling operation.
struct TimedSeries {
    std::vector<Timestamp> timestamps;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
};

/// Time-indexed log returns, the universal analysis input.
struct ReturnSeries {
    std::vector<Timestamp> timestamps;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }

    void validate() const {
        if (values.empty() || timestamps.size() != values.size()) {
            throw validation_error("ReturnSeries: empty or timestamp/value length mismatch");
        }
        detail::check_strictly_increasing(timestamps, "ReturnSeries");
        for (double v : values) {
            if (!std::isfinite(v)) throw validation_error("ReturnSeries: non-finite value");
        }
    }
};

/// Time-indexed positive prices.
struct PriceSeries {
    std::vector<Timestamp> timestamps;
    std::vector<double> prices;

    std::size_t size() const noexcept { return prices.size(); }

    void validate() const {
        if (prices.empty() || timestamps.size() != prices.size()) {
            throw validation_error("PriceSeries: empty or timestamp/price length mismatch");
        }
        detail::check_strictly_increasing(timestamps, "PriceSeries");
        for (double p : prices) {
            if (!(p > 0.0) || !std::isfinite(p)) {
                throw validation_error("PriceSeries: prices must be positive and finite");
            }
        }
    }
};

/// Rolling KL values with their standardized z-scores and regime flags.
struct RegimeSeries {
    std::vector<Timestamp> timestamps;
    std::vector<double> kl_nats;
    std::vector<double> z_score;
    std::vector<bool> flag;

    std::size_t size() const noexcept { return kl_nats.size(); }
};

/// Trading signals in {-1, 0, +1}.
struct SignalSeries {
    std::vector<Timestamp> timestamps;
    std::vector<int> signals;

    std::size_t size() const noexcept { return signals.size(); }

    void validate() const {
        if (timestamps.size() != signals.size()) {
            throw validation_error("SignalSeries: timestamp/signal length mismatch");
        }
        for (int s : signals) {
            if (s < -1 || s > 1) throw validation_error("SignalSeries: signal outside {-1,0,+1}");
        }
    }
};

} // namespace finfo
