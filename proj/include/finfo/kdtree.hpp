#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "finfo/errors.hpp"
#include "finfo/sample_matrix.hpp"

namespace finfo {

/// Static kd-tree over the rows of a SampleMatrix for k-th nearest-neighbor
/// distance queries under Chebyshev or Euclidean metrics.
///
/// The tree stores row indices only; the matrix must outlive the tree.
class KdTree {
public:
    KdTree(const SampleMatrix& points, Metric metric)
        : points_(&points), metric_(metric), dim_(points.cols()) {
        indices_.resize(points.rows());
        std::iota(indices_.begin(), indices_.end(), std::size_t{0});
        nodes_.reserve(2 * points.rows());
        root_ = build(0, points.rows(), 0);
    }

    /// Distance from row `query` to its k-th nearest neighbor among the other rows.
    double kth_neighbor_distance(std::size_t query, int k) const {
        if (k < 1 || static_cast<std::size_t>(k) >= points_->rows()) {
            throw validation_error("KdTree: k must satisfy 1 <= k <= N-1");
        }
        // Max-heap of the k best distances seen so far.
        std::vector<double> heap;
        heap.reserve(static_cast<std::size_t>(k));
        search(root_, points_->row(query), query, static_cast<std::size_t>(k), heap);
        return heap.front();
    }

private:
    struct Node {
        std::size_t begin, end; // leaf: index range
        int axis = -1;          // -1 marks a leaf
        double split = 0.0;
        int left = -1, right = -1;
    };

    static constexpr std::size_t kLeafSize = 16;

    int build(std::size_t begin, std::size_t end, std::size_t depth) {
        Node node;
        node.begin = begin;
        node.end = end;
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(node);
        if (end - begin <= kLeafSize) return id;

        const std::size_t axis = depth % dim_;
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(indices_.begin() + begin, indices_.begin() + mid, indices_.begin() + end,
                         [&](std::size_t a, std::size_t b) {
                             const double va = (*points_)(a, axis);
                             const double vb = (*points_)(b, axis);
                             return va < vb || (va == vb && a < b);
                         });
        nodes_[id].axis = static_cast<int>(axis);
        nodes_[id].split = (*points_)(indices_[mid], axis);
        nodes_[id].left = build(begin, mid, depth + 1);
        nodes_[id].right = build(mid, end, depth + 1);
        return id;
    }

    double distance(const double* a, const double* b) const {
        if (metric_ == Metric::chebyshev) {
            double best = 0.0;
            for (std::size_t j = 0; j < dim_; ++j) {
                best = std::max(best, std::abs(a[j] - b[j]));
            }
            return best;
        }
        double sq = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            const double diff = a[j] - b[j];
            sq += diff * diff;
        }
        return std::sqrt(sq);
    }

    void consider(double dist, std::size_t k, std::vector<double>& heap) const {
        if (heap.size() < k) {
            heap.push_back(dist);
            std::push_heap(heap.begin(), heap.end());
        } else if (dist < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = dist;
            std::push_heap(heap.begin(), heap.end());
        }
    }

    void search(int id, const double* query, std::size_t self, std::size_t k,
                std::vector<double>& heap) const {
        const Node& node = nodes_[static_cast<std::size_t>(id)];
        if (node.axis < 0) {
            for (std::size_t i = node.begin; i < node.end; ++i) {
                const std::size_t idx = indices_[i];
                if (idx == self) continue;
                consider(distance(query, points_->row(idx)), k, heap);
            }
            return;
        }
        const double delta = query[node.axis] - node.split;
        const int near = delta < 0.0 ? node.left : node.right;
        const int far = delta < 0.0 ? node.right : node.left;
        search(near, query, self, k, heap);
        if (heap.size() < k || std::abs(delta) <= heap.front()) {
            search(far, query, self, k, heap);
        }
    }

    const SampleMatrix* points_;
    Metric metric_;
    std::size_t dim_;
    std::vector<std::size_t> indices_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

/// k-th nearest-neighbor distance for every row of `points`.
inline std::vector<double> kth_neighbor_distances(const SampleMatrix& points, int k,
                                                  Metric metric) {
    KdTree tree(points, metric);
    std::vector<double> out(points.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        out[i] = tree.kth_neighbor_distance(i, k);
    }
    return out;
}

} // namespace finfo
