#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "finfo/errors.hpp"

namespace finfo {

inline constexpr double kProbabilityTolerance = 1e-9;

/// Entropy-like quantity in natural-log units.
struct EntropyValue {
    double nats = 0.0;
};

/// Probability masses over a finite support.
struct DiscreteDistribution {
    std::vector<double> probs;
    std::optional<std::vector<std::string>> labels;

    void validate() const {
        if (probs.empty()) {
            throw validation_error("DiscreteDistribution: empty support");
        }
        double total = 0.0;
        for (double p : probs) {
            if (!(p >= 0.0) || !std::isfinite(p)) {
                throw validation_error("DiscreteDistribution: negative or non-finite mass");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > kProbabilityTolerance) {
            throw validation_error("DiscreteDistribution: masses sum to " + std::to_string(total));
        }
    }
};

/// Joint distribution over a product grid X x Y, row-major (rows index X).
struct JointDistribution {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> probs; // rows * cols, row-major

    double at(std::size_t x, std::size_t y) const { return probs[x * cols + y]; }

    void validate() const {
        if (rows == 0 || cols == 0 || probs.size() != rows * cols) {
            throw validation_error("JointDistribution: grid shape mismatch");
        }
        double total = 0.0;
        for (double p : probs) {
            if (!(p >= 0.0) || !std::isfinite(p)) {
                throw validation_error("JointDistribution: negative or non-finite mass");
            }
            total += p;
        }
        if (std::abs(total - 1.0) > kProbabilityTolerance) {
            throw validation_error("JointDistribution: masses sum to " + std::to_string(total));
        }
    }

    DiscreteDistribution marginal_x() const {
        DiscreteDistribution out;
        out.probs.assign(rows, 0.0);
        for (std::size_t x = 0; x < rows; ++x)
            for (std::size_t y = 0; y < cols; ++y) out.probs[x] += at(x, y);
        return out;
    }

    DiscreteDistribution marginal_y() const {
        DiscreteDistribution out;
        out.probs.assign(cols, 0.0);
        for (std::size_t x = 0; x < rows; ++x)
            for (std::size_t y = 0; y < cols; ++y) out.probs[y] += at(x, y);
        return out;
    }

    /// The table flattened to a plain distribution over rows*cols outcomes.
    DiscreteDistribution flattened() const { return DiscreteDistribution{probs, std::nullopt}; }
};

namespace detail {

// 0 * log 0 = 0 convention.
inline double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

inline double entropy_unchecked(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs) h -= plogp(p);
    return h;
}

} // namespace detail

/// Shannon entropy H(P) = -sum p log p, in nats.
inline EntropyValue discrete_entropy(const DiscreteDistribution& p) {
    p.validate();
    return {detail::entropy_unchecked(p.probs)};
}

/// Conditional entropy H(Y|X) of a joint table; satisfies H(X,Y) = H(X) + H(Y|X).
inline EntropyValue conditional_entropy(const JointDistribution& joint) {
    joint.validate();
    const double h_joint = detail::entropy_unchecked(joint.probs);
    const double h_x = detail::entropy_unchecked(joint.marginal_x().probs);
    return {h_joint - h_x};
}

/// Kullback-Leibler divergence D(P || Q) in nats.
///
/// Throws degenerate_input_error when P puts mass where Q has none
/// (absolute continuity violated; histogram callers avoid this via smoothing).
inline EntropyValue kl_divergence_discrete(const DiscreteDistribution& p,
                                           const DiscreteDistribution& q) {
    p.validate();
    q.validate();
    if (p.probs.size() != q.probs.size()) {
        throw validation_error("kl_divergence_discrete: supports differ in size");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        const double pi = p.probs[i];
        if (pi > 0.0) {
            if (q.probs[i] <= 0.0) {
                throw degenerate_input_error(
                    "kl_divergence_discrete: divergence undefined, q has zero mass where p > 0");
            }
            d += pi * std::log(pi / q.probs[i]);
        }
    }
    return {d};
}

/// Mutual information I(X;Y) of a joint table, in nats.
inline EntropyValue mutual_information_discrete(const JointDistribution& joint) {
    joint.validate();
    const double h_x = detail::entropy_unchecked(joint.marginal_x().probs);
    const double h_y = detail::entropy_unchecked(joint.marginal_y().probs);
    const double h_xy = detail::entropy_unchecked(joint.probs);
    return {h_x + h_y - h_xy};
}

/// Normalized mutual information I / sqrt(H(X) H(Y)) of a joint table, in [0,1].
inline double nmi_discrete(const JointDistribution& joint) {
    joint.validate();
    const double h_x = detail::entropy_unchecked(joint.marginal_x().probs);
    const double h_y = detail::entropy_unchecked(joint.marginal_y().probs);
    if (h_x <= 0.0 || h_y <= 0.0) {
        throw validation_error("nmi_discrete: a marginal entropy is zero, normalization undefined");
    }
    const double mi = h_x + h_y - detail::entropy_unchecked(joint.probs);
    const double nmi = mi / std::sqrt(h_x * h_y);
    return std::min(1.0, std::max(0.0, nmi));
}

/// Probability masses over fixed bin edges, with additive smoothing applied at build time.
struct BinnedDistribution {
    std::vector<double> edges; // B+1 strictly increasing
    std::vector<double> probs; // B masses, sum to 1
    double smoothing = 0.0;

    void validate() const {
        if (edges.size() < 3 || probs.size() + 1 != edges.size()) {
            throw validation_error("BinnedDistribution: need at least 2 bins and B+1 edges");
        }
        for (std::size_t i = 1; i < edges.size(); ++i) {
            if (!(edges[i] > edges[i - 1])) {
                throw validation_error("BinnedDistribution: edges not strictly increasing");
            }
        }
        DiscreteDistribution{probs, std::nullopt}.validate();
    }

    DiscreteDistribution as_discrete() const { return DiscreteDistribution{probs, std::nullopt}; }
};

/// Histogram a sample onto the given edges, add `smoothing` to every bin count,
/// and renormalize. Values outside the edge range are clamped into the end bins.
inline BinnedDistribution bin_samples(const std::vector<double>& values,
                                      const std::vector<double>& edges, double smoothing) {
    if (edges.size() < 3) {
        throw validation_error("bin_samples: need at least 2 bins");
    }
    const std::size_t bins = edges.size() - 1;
    std::vector<double> counts(bins, smoothing);
    const double lo = edges.front();
    const double hi = edges.back();
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double v : values) {
        auto idx = static_cast<long>(std::floor((v - lo) / width));
        if (idx < 0) idx = 0;
        if (idx >= static_cast<long>(bins)) idx = static_cast<long>(bins) - 1;
        counts[static_cast<std::size_t>(idx)] += 1.0;
    }
    double total = 0.0;
    for (double c : counts) total += c;
    for (double& c : counts) c /= total;
    return BinnedDistribution{edges, std::move(counts), smoothing};
}

} // namespace finfo
