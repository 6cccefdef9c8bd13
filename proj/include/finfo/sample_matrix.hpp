#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "finfo/errors.hpp"
#include "finfo/rng.hpp"

namespace finfo {

/// Distance used by the k-NN machinery. Chebyshev keeps the unit-ball volume
/// terms trivially cancelling across joint/marginal entropy combinations.
enum class Metric { chebyshev, euclidean };

/// k-NN estimator hyperparameters.
struct KnnConfig {
    int k = 3;
    double jitter_sigma = 1e-10;
    std::uint64_t seed = 0;
    Metric metric = Metric::chebyshev;

    void validate() const {
        if (k < 1) throw validation_error("KnnConfig: k must be >= 1");
        if (!(jitter_sigma >= 0.0)) throw validation_error("KnnConfig: jitter_sigma must be >= 0");
    }
};

/// N observations x d dimensions, row-major.
class SampleMatrix {
public:
    SampleMatrix() = default;

    SampleMatrix(std::vector<double> data, std::size_t n, std::size_t d)
        : data_(std::move(data)), n_(n), d_(d) {
        if (n_ < 1 || d_ < 1 || data_.size() != n_ * d_) {
            throw validation_error("SampleMatrix: shape mismatch or empty");
        }
        for (double v : data_) {
            if (!std::isfinite(v)) throw validation_error("SampleMatrix: non-finite entry");
        }
    }

    /// Single-column matrix from a plain vector.
    static SampleMatrix column(std::vector<double> values) {
        const std::size_t n = values.size();
        return SampleMatrix(std::move(values), n, 1);
    }

    /// Column-wise concatenation; all inputs must share the row count.
    static SampleMatrix concat_columns(const std::vector<const SampleMatrix*>& parts) {
        if (parts.empty()) throw validation_error("SampleMatrix::concat_columns: no inputs");
        const std::size_t n = parts.front()->rows();
        std::size_t d = 0;
        for (const auto* m : parts) {
            if (m->rows() != n) {
                throw validation_error("SampleMatrix::concat_columns: row count mismatch");
            }
            d += m->cols();
        }
        std::vector<double> data(n * d);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t offset = 0;
            for (const auto* m : parts) {
                for (std::size_t j = 0; j < m->cols(); ++j) {
                    data[i * d + offset + j] = (*m)(i, j);
                }
                offset += m->cols();
            }
        }
        return SampleMatrix(std::move(data), n, d);
    }

    std::size_t rows() const noexcept { return n_; }
    std::size_t cols() const noexcept { return d_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * d_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * d_ + j]; }

    const double* row(std::size_t i) const { return data_.data() + i * d_; }
    const std::vector<double>& data() const noexcept { return data_; }

    /// Copy of one column as a single-column matrix.
    SampleMatrix column_block(std::size_t first, std::size_t count) const {
        if (first + count > d_ || count == 0) {
            throw validation_error("SampleMatrix::column_block: out of range");
        }
        std::vector<double> data(n_ * count);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < count; ++j) data[i * count + j] = (*this)(i, first + j);
        return SampleMatrix(std::move(data), n_, count);
    }

    /// Additive Gaussian jitter, deterministic for a given seed.
    SampleMatrix jittered(double sigma, std::uint64_t seed) const {
        if (sigma == 0.0) return *this;
        Rng rng(seed);
        std::vector<double> data = data_;
        for (double& v : data) v += sigma * rng.normal();
        return SampleMatrix(std::move(data), n_, d_);
    }

private:
    std::vector<double> data_;
    std::size_t n_ = 0;
    std::size_t d_ = 0;
};

} // namespace finfo
