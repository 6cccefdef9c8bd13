#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

#include "finfo/discrete.hpp"
#include "finfo/errors.hpp"
#include "finfo/estimators.hpp"
#include "finfo/sample_matrix.hpp"
#include "finfo/series.hpp"

namespace finfo {

/// Windowing parameters shared by the rolling operations.
struct RollingSpec {
    std::size_t window = 252;     ///< observations per evaluation window
    std::size_t stride = 1;       ///< observations between evaluations
    std::size_t lag = 1;          ///< shift applied when pairing a series with its past
    std::size_t past_len_target = 1; ///< k: target-past block length (NMI lag-vector, TE)
    std::size_t past_len_source = 1; ///< l: source-past block length (TE)

    void validate() const {
        if (window < 30) throw validation_error("RollingSpec: window must be >= 30");
        if (stride < 1) throw validation_error("RollingSpec: stride must be >= 1");
        if (window <= lag + 1) throw validation_error("RollingSpec: window must exceed lag + 1");
        if (past_len_target < 1 || past_len_source < 1) {
            throw validation_error("RollingSpec: past lengths must be >= 1");
        }
    }
};

namespace detail {

/// Evaluation indices first, first+stride, ... <= last. Windows are independent,
/// so they are evaluated in parallel; each slot is written exactly once, which
/// keeps the output deterministic.
template <typename Fn>
void for_each_window(std::size_t first, std::size_t last, std::size_t stride, Fn&& fn) {
    if (last < first) return;
    const std::size_t count = (last - first) / stride + 1;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(hw, count));
    if (n_threads <= 1 || count < 4) {
        for (std::size_t j = 0; j < count; ++j) fn(j, first + j * stride);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        workers.emplace_back([&, t] {
            for (std::size_t j = t; j < count; j += n_threads) fn(j, first + j * stride);
        });
    }
    for (auto& w : workers) w.join();
}

inline std::size_t window_count(std::size_t n, std::size_t required_history, std::size_t stride) {
    return (n - required_history) / stride + 1;
}

inline std::vector<double> slice(const std::vector<double>& v, std::size_t first,
                                 std::size_t count) {
    return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(first),
                               v.begin() + static_cast<std::ptrdiff_t>(first + count));
}

/// NMI of a window where the past side may be a multi-column block.
inline double nmi_block(const SampleMatrix& x, const SampleMatrix& y_block,
                        const KnnConfig& cfg) {
    const SampleMatrix joint = SampleMatrix::concat_columns({&x, &y_block});
    BlockEntropies blocks(joint, cfg);
    const double h_x = blocks.entropy(0, x.cols());
    const double h_y = blocks.entropy(x.cols(), y_block.cols());
    const double h_xy = blocks.entropy(0, joint.cols());
    const double mi = std::max(0.0, h_x + h_y - h_xy);
    const double denom = h_x * h_y;
    if (!(denom > 0.0)) return 0.0;
    return std::min(1.0, std::max(0.0, mi / std::sqrt(denom)));
}

} // namespace detail

/// Rolling k-NN differential entropy of trailing windows, right-edge labeled.
inline TimedSeries rolling_entropy(const ReturnSeries& r, const RollingSpec& spec,
                                   const KnnConfig& cfg) {
    r.validate();
    spec.validate();
    if (r.size() < spec.window) {
        throw insufficient_data_error("rolling_entropy: series shorter than window");
    }
    const std::size_t first = spec.window - 1;
    const std::size_t count = detail::window_count(r.size(), spec.window, spec.stride);
    TimedSeries out;
    out.timestamps.resize(count);
    out.values.resize(count);
    detail::for_each_window(first, r.size() - 1, spec.stride, [&](std::size_t j, std::size_t i) {
        const auto window = detail::slice(r.values, i + 1 - spec.window, spec.window);
        out.values[j] = knn_differential_entropy(SampleMatrix::column(window), cfg).nats;
        out.timestamps[j] = r.timestamps[i];
    });
    return out;
}

/// Rolling histogram KL of the trailing window against the window before it:
/// D( [t-w+1, t] || [t-2w+1, t-w] ). Set stride = window for the
/// non-overlapping variant.
inline TimedSeries rolling_kl(const ReturnSeries& r, const RollingSpec& spec, int bins,
                              double smoothing) {
    r.validate();
    spec.validate();
    const std::size_t w = spec.window;
    if (r.size() < 2 * w) {
        throw insufficient_data_error("rolling_kl: series shorter than two windows");
    }
    const std::size_t first = 2 * w - 1;
    const std::size_t count = detail::window_count(r.size(), 2 * w, spec.stride);
    TimedSeries out;
    out.timestamps.resize(count);
    out.values.resize(count);
    detail::for_each_window(first, r.size() - 1, spec.stride, [&](std::size_t j, std::size_t i) {
        const auto current = detail::slice(r.values, i + 1 - w, w);
        const auto reference = detail::slice(r.values, i + 1 - 2 * w, w);
        out.values[j] = kl_divergence_binned(SampleMatrix::column(current),
                                             SampleMatrix::column(reference), bins, smoothing)
                            .nats;
        out.timestamps[j] = r.timestamps[i];
    });
    return out;
}

/// Baseline used to standardize a KL series.
enum class BaselineMode {
    full_sample, ///< mu/sigma from the whole supplied series
    expanding    ///< mu/sigma from values up to and including each point
};

/// Standardize a KL series into z-scores and threshold-exceedance regime flags.
/// When mu/sigma are not supplied they are estimated per `mode`.
inline RegimeSeries standardize_and_flag(const TimedSeries& kl, std::optional<double> mu,
                                         std::optional<double> sigma, double threshold,
                                         BaselineMode mode = BaselineMode::full_sample) {
    if (kl.size() == 0) throw validation_error("standardize_and_flag: empty series");
    if (sigma && !(*sigma > 0.0)) {
        throw validation_error("standardize_and_flag: sigma must be positive");
    }
    RegimeSeries out;
    out.timestamps = kl.timestamps;
    out.kl_nats = kl.values;
    out.z_score.resize(kl.size());
    out.flag.resize(kl.size());

    auto mean_std = [](const std::vector<double>& v, std::size_t n) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += v[i];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) var += (v[i] - mean) * (v[i] - mean);
        var /= static_cast<double>(n);
        return std::pair<double, double>(mean, std::sqrt(var));
    };

    if (mu && sigma) {
        for (std::size_t i = 0; i < kl.size(); ++i) {
            out.z_score[i] = (kl.values[i] - *mu) / *sigma;
            out.flag[i] = out.z_score[i] > threshold;
        }
        return out;
    }
    if (mu || sigma) {
        throw validation_error("standardize_and_flag: supply both mu and sigma or neither");
    }
    if (mode == BaselineMode::full_sample) {
        const auto [m, s] = mean_std(kl.values, kl.size());
        if (!(s > 0.0)) {
            throw validation_error("standardize_and_flag: series has zero dispersion");
        }
        for (std::size_t i = 0; i < kl.size(); ++i) {
            out.z_score[i] = (kl.values[i] - m) / s;
            out.flag[i] = out.z_score[i] > threshold;
        }
        return out;
    }
    for (std::size_t i = 0; i < kl.size(); ++i) {
        const auto [m, s] = mean_std(kl.values, i + 1);
        out.z_score[i] = s > 0.0 ? (kl.values[i] - m) / s : 0.0;
        out.flag[i] = out.z_score[i] > threshold;
    }
    return out;
}

/// Rolling NMI between a series and its lagged past, in [0,1].
///
/// Each evaluation pairs r_t with r_{t-lag}; with past_len_target = k > 1 the
/// past side becomes the block (r_{t-lag}, ..., r_{t-lag-k+1}).
inline TimedSeries rolling_nmi(const ReturnSeries& r, const RollingSpec& spec,
                               const KnnConfig& cfg) {
    r.validate();
    spec.validate();
    const std::size_t w = spec.window;
    const std::size_t k = spec.past_len_target;
    const std::size_t history = w + spec.lag + k - 1;
    if (r.size() < history) {
        throw insufficient_data_error("rolling_nmi: series shorter than window + lag");
    }
    const std::size_t first = history - 1;
    const std::size_t count = detail::window_count(r.size(), history, spec.stride);
    TimedSeries out;
    out.timestamps.resize(count);
    out.values.resize(count);
    detail::for_each_window(first, r.size() - 1, spec.stride, [&](std::size_t j, std::size_t i) {
        std::vector<double> x(w);
        std::vector<double> past(w * k);
        for (std::size_t m = 0; m < w; ++m) {
            const std::size_t t = i + 1 - w + m;
            x[m] = r.values[t];
            for (std::size_t c = 0; c < k; ++c) past[m * k + c] = r.values[t - spec.lag - c];
        }
        out.values[j] = detail::nmi_block(SampleMatrix::column(std::move(x)),
                                          SampleMatrix(std::move(past), w, k), cfg);
        out.timestamps[j] = r.timestamps[i];
    });
    return out;
}

/// Aligned column blocks (Y_{t+1} | Y_t^{(k)} | X_t^{(l)}) for transfer entropy.
struct LaggedDesign {
    SampleMatrix target_future; ///< Y_{t+1}, one column
    SampleMatrix target_past;   ///< k columns, most recent first
    SampleMatrix source_past;   ///< l columns, most recent first
    std::vector<Timestamp> timestamps; ///< label of the last data point each row uses

    std::size_t rows() const noexcept { return target_future.rows(); }
};

/// Build the lagged design over valid t in [max(k,l), N-2].
inline LaggedDesign build_lagged_design(const ReturnSeries& x, const ReturnSeries& y,
                                        std::size_t k, std::size_t l) {
    x.validate();
    y.validate();
    if (k < 1 || l < 1) throw validation_error("build_lagged_design: k, l must be >= 1");
    if (x.size() != y.size() || x.timestamps != y.timestamps) {
        throw alignment_error("build_lagged_design: series timestamps differ");
    }
    const std::size_t n = x.size();
    const std::size_t start = std::max(k, l);
    if (n < start + 2) {
        throw insufficient_data_error("build_lagged_design: series shorter than max(k, l) + 2");
    }
    const std::size_t rows = n - start - 1;
    std::vector<double> future(rows);
    std::vector<double> ypast(rows * k);
    std::vector<double> xpast(rows * l);
    std::vector<Timestamp> ts(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = start + r;
        future[r] = y.values[t + 1];
        for (std::size_t c = 0; c < k; ++c) ypast[r * k + c] = y.values[t - c];
        for (std::size_t c = 0; c < l; ++c) xpast[r * l + c] = x.values[t - c];
        ts[r] = y.timestamps[t + 1];
    }
    return LaggedDesign{SampleMatrix(std::move(future), rows, 1),
                        SampleMatrix(std::move(ypast), rows, k),
                        SampleMatrix(std::move(xpast), rows, l), std::move(ts)};
}

namespace detail {

inline double transfer_entropy_rows(const SampleMatrix& joint, std::size_t k, std::size_t l,
                                    const KnnConfig& cfg) {
    BlockEntropies blocks(joint, cfg);
    const double h_fp = blocks.entropy(0, 1 + k);       // h(Y+, Yk)
    const double h_ps = blocks.entropy(1, k + l);       // h(Yk, Xl)
    const double h_all = blocks.entropy(0, 1 + k + l);  // h(Y+, Yk, Xl)
    const double h_p = blocks.entropy(1, k);            // h(Yk)
    return std::max(0.0, h_fp + h_ps - h_all - h_p);
}

} // namespace detail

/// Transfer entropy T_{X->Y} from a lagged design, via the four-entropy
/// combination h(Y+,Yk) + h(Yk,Xl) - h(Y+,Yk,Xl) - h(Yk), clipped at zero.
inline EntropyValue transfer_entropy(const LaggedDesign& design, const KnnConfig& cfg) {
    if (design.rows() < static_cast<std::size_t>(cfg.k) + 1) {
        throw insufficient_data_error("transfer_entropy: too few design rows");
    }
    const SampleMatrix joint = SampleMatrix::concat_columns(
        {&design.target_future, &design.target_past, &design.source_past});
    return {detail::transfer_entropy_rows(joint, design.target_past.cols(),
                                          design.source_past.cols(), cfg)};
}

/// Transfer entropy per trailing window of design rows, right-edge labeled.
inline TimedSeries rolling_transfer_entropy(const ReturnSeries& x, const ReturnSeries& y,
                                            const RollingSpec& spec, const KnnConfig& cfg) {
    spec.validate();
    const std::size_t k = spec.past_len_target;
    const std::size_t l = spec.past_len_source;
    if (x.size() < spec.window + std::max(k, l) + 1) {
        throw insufficient_data_error("rolling_transfer_entropy: series shorter than window + lags");
    }
    const LaggedDesign design = build_lagged_design(x, y, k, l);
    const SampleMatrix joint = SampleMatrix::concat_columns(
        {&design.target_future, &design.target_past, &design.source_past});
    const std::size_t w = spec.window;
    if (design.rows() < w) {
        throw insufficient_data_error("rolling_transfer_entropy: not enough design rows");
    }
    const std::size_t first = w - 1;
    const std::size_t count = detail::window_count(design.rows(), w, spec.stride);
    TimedSeries out;
    out.timestamps.resize(count);
    out.values.resize(count);
    detail::for_each_window(first, design.rows() - 1, spec.stride,
                            [&](std::size_t j, std::size_t i) {
                                std::vector<double> rows(w * joint.cols());
                                for (std::size_t m = 0; m < w; ++m) {
                                    const std::size_t r = i + 1 - w + m;
                                    for (std::size_t c = 0; c < joint.cols(); ++c) {
                                        rows[m * joint.cols() + c] = joint(r, c);
                                    }
                                }
                                out.values[j] = detail::transfer_entropy_rows(
                                    SampleMatrix(std::move(rows), w, joint.cols()), k, l, cfg);
                                out.timestamps[j] = design.timestamps[i];
                            });
    return out;
}

} // namespace finfo
