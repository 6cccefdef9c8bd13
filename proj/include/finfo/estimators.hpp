#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "finfo/discrete.hpp"
#include "finfo/errors.hpp"
#include "finfo/kdtree.hpp"
#include "finfo/sample_matrix.hpp"
#include "finfo/special.hpp"

namespace finfo {

namespace detail {

/// Kozachenko-Leonenko differential entropy of an already-jittered sample.
///
///   h = psi(N) - psi(k) + log c_d + (d/N) sum_i log rho_k(i)
///
/// with rho_k(i) the distance to the k-th nearest neighbor and c_d the
/// unit-radius ball volume for the metric in use (2^d for Chebyshev).
inline double kl_entropy_no_jitter(const SampleMatrix& samples, int k, Metric metric) {
    const std::size_t n = samples.rows();
    const std::size_t d = samples.cols();
    if (n < static_cast<std::size_t>(k) + 1) {
        throw validation_error("knn entropy: need N >= k + 1");
    }
    const std::vector<double> rho = kth_neighbor_distances(samples, k, metric);
    double sum_log = 0.0;
    for (double r : rho) {
        if (r <= 0.0) {
            throw degenerate_input_error(
                "knn entropy: zero k-NN distance (duplicate points with no jitter)");
        }
        sum_log += std::log(r);
    }
    const double log_cd = metric == Metric::chebyshev
                              ? static_cast<double>(d) * std::log(2.0)
                              : std::log(unit_ball_volume(static_cast<int>(d)));
    return digamma(static_cast<double>(n)) - digamma(static_cast<double>(k)) + log_cd +
           static_cast<double>(d) * sum_log / static_cast<double>(n);
}

/// Entropies of contiguous column blocks of one jointly-jittered matrix.
/// Sharing the jitter across blocks keeps joint/marginal combinations consistent.
struct BlockEntropies {
    SampleMatrix jittered;

    BlockEntropies(const SampleMatrix& samples, const KnnConfig& cfg)
        : jittered(samples.jittered(cfg.jitter_sigma, cfg.seed)), cfg_(cfg) {
        cfg.validate();
        if (samples.rows() < static_cast<std::size_t>(cfg.k) + 1) {
            throw validation_error("knn estimator: need N >= k + 1");
        }
    }

    double entropy(std::size_t first_col, std::size_t n_cols) const {
        if (n_cols == jittered.cols() && first_col == 0) {
            return kl_entropy_no_jitter(jittered, cfg_.k, cfg_.metric);
        }
        return kl_entropy_no_jitter(jittered.column_block(first_col, n_cols), cfg_.k, cfg_.metric);
    }

private:
    KnnConfig cfg_;
};

} // namespace detail

/// k-NN (Kozachenko-Leonenko) differential entropy estimate in nats.
/// Jitter of scale cfg.jitter_sigma is applied once, seeded by cfg.seed.
inline EntropyValue knn_differential_entropy(const SampleMatrix& samples, const KnnConfig& cfg) {
    detail::BlockEntropies blocks(samples, cfg);
    return {blocks.entropy(0, samples.cols())};
}

/// Mutual information I(X;Y) = max(0, h(X) + h(Y) - h(X,Y)), in nats.
/// X and Y may be multi-dimensional; a single joint jitter is shared by all terms.
inline EntropyValue mutual_information_knn(const SampleMatrix& x, const SampleMatrix& y,
                                           const KnnConfig& cfg) {
    if (x.rows() != y.rows()) {
        throw validation_error("mutual_information_knn: sample counts differ");
    }
    const SampleMatrix joint = SampleMatrix::concat_columns({&x, &y});
    detail::BlockEntropies blocks(joint, cfg);
    const double h_x = blocks.entropy(0, x.cols());
    const double h_y = blocks.entropy(x.cols(), y.cols());
    const double h_xy = blocks.entropy(0, joint.cols());
    return {std::max(0.0, h_x + h_y - h_xy)};
}

/// Normalized mutual information MI / sqrt(h(X) h(Y)), clamped to [0,1].
/// Returns 0 when the product of marginal entropy estimates is non-positive.
inline double nmi_continuous(const SampleMatrix& x, const SampleMatrix& y, const KnnConfig& cfg) {
    if (x.cols() != 1 || y.cols() != 1) {
        throw validation_error("nmi_continuous: inputs must be one-dimensional");
    }
    if (x.rows() != y.rows()) {
        throw validation_error("nmi_continuous: sample counts differ");
    }
    const SampleMatrix joint = SampleMatrix::concat_columns({&x, &y});
    detail::BlockEntropies blocks(joint, cfg);
    const double h_x = blocks.entropy(0, 1);
    const double h_y = blocks.entropy(1, 1);
    const double h_xy = blocks.entropy(0, 2);
    const double mi = std::max(0.0, h_x + h_y - h_xy);
    const double denom = h_x * h_y;
    if (!(denom > 0.0)) return 0.0;
    return std::min(1.0, std::max(0.0, mi / std::sqrt(denom)));
}

/// Total correlation max(0, sum_i h(R_i) - h(R)) of a d >= 2 sample, in nats.
inline EntropyValue total_correlation(const SampleMatrix& samples, const KnnConfig& cfg) {
    if (samples.cols() < 2) {
        throw validation_error("total_correlation: need at least 2 dimensions");
    }
    detail::BlockEntropies blocks(samples, cfg);
    double sum_marginals = 0.0;
    for (std::size_t j = 0; j < samples.cols(); ++j) {
        sum_marginals += blocks.entropy(j, 1);
    }
    const double h_joint = blocks.entropy(0, samples.cols());
    return {std::max(0.0, sum_marginals - h_joint)};
}

/// Histogram KL divergence D(current || reference) over shared bin edges
/// spanning the pooled range, with additive smoothing then renormalization.
inline EntropyValue kl_divergence_binned(const SampleMatrix& current,
                                         const SampleMatrix& reference, int bins,
                                         double smoothing) {
    if (current.cols() != 1 || reference.cols() != 1) {
        throw validation_error("kl_divergence_binned: inputs must be one-dimensional");
    }
    if (bins < 2) {
        throw validation_error("kl_divergence_binned: need at least 2 bins");
    }
    double lo = current.data()[0];
    double hi = lo;
    for (double v : current.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : reference.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) {
        throw degenerate_input_error("kl_divergence_binned: pooled sample range is degenerate");
    }
    std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    edges.back() = hi;
    const BinnedDistribution p = bin_samples(current.data(), edges, smoothing);
    const BinnedDistribution q = bin_samples(reference.data(), edges, smoothing);
    return kl_divergence_discrete(p.as_discrete(), q.as_discrete());
}

} // namespace finfo
