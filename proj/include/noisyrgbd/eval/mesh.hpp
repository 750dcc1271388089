#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "noisyrgbd/core/error.hpp"

namespace noisyrgbd {

using PointCloud = std::vector<Eigen::Vector3d>;

/// Static kd-tree over 3D points for nearest-neighbour queries.
class KdTree {
public:
    explicit KdTree(const PointCloud& points) : points_(points) {
        if (points_.empty()) throw ParameterError("kd-tree requires a non-empty point cloud");
        order_.resize(points_.size());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        nodes_.reserve(points_.size());
        root_ = build(0, points_.size(), 0);
    }

    /// Euclidean distance from `query` to its nearest tree point.
    double nearest_distance(const Eigen::Vector3d& query) const {
        double best_sq = std::numeric_limits<double>::infinity();
        search(root_, query, best_sq);
        return std::sqrt(best_sq);
    }

private:
    struct Node {
        std::size_t point;
        int axis;
        std::int32_t left = -1;
        std::int32_t right = -1;
    };

    std::int32_t build(std::size_t begin, std::size_t end, int depth) {
        if (begin >= end) return -1;
        const int axis = depth % 3;
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                         order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         order_.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t a, std::size_t b) {
                             return points_[a][axis] < points_[b][axis];
                         });
        const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(Node{order_[mid], axis});
        const std::int32_t left = build(begin, mid, depth + 1);
        const std::int32_t right = build(mid + 1, end, depth + 1);
        nodes_[static_cast<std::size_t>(id)].left = left;
        nodes_[static_cast<std::size_t>(id)].right = right;
        return id;
    }

    void search(std::int32_t id, const Eigen::Vector3d& query, double& best_sq) const {
        if (id < 0) return;
        const Node& node = nodes_[static_cast<std::size_t>(id)];
        const Eigen::Vector3d& p = points_[node.point];
        best_sq = std::min(best_sq, (p - query).squaredNorm());
        const double delta = query[node.axis] - p[node.axis];
        const std::int32_t near = delta < 0 ? node.left : node.right;
        const std::int32_t far = delta < 0 ? node.right : node.left;
        search(near, query, best_sq);
        if (delta * delta < best_sq) search(far, query, best_sq);
    }

    const PointCloud& points_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

/// 3D reconstruction quality of `reconstructed` against `ground_truth`.
struct MeshMetrics {
    double accuracy_m = 0.0;                // mean nn distance P -> Q
    double completion_m = 0.0;              // mean nn distance Q -> P
    double completion_ratio_percent = 0.0;  // % of Q within threshold of P
};

/// Nearest-neighbour mesh metrics at the given threshold (meters).
/// `squared_distances` switches ACC/Comp to mean squared distances; the
/// threshold always applies to the plain distance.
inline MeshMetrics mesh_metrics(const PointCloud& reconstructed, const PointCloud& ground_truth,
                                double threshold = 0.05, bool squared_distances = false) {
    if (reconstructed.empty() || ground_truth.empty())
        throw ParameterError("mesh metrics require non-empty point clouds");

    const KdTree gt_tree(ground_truth);
    const KdTree rec_tree(reconstructed);

    MeshMetrics m;
    double acc = 0.0;
    for (const auto& p : reconstructed) {
        const double d = gt_tree.nearest_distance(p);
        acc += squared_distances ? d * d : d;
    }
    m.accuracy_m = acc / static_cast<double>(reconstructed.size());

    double comp = 0.0;
    std::size_t within = 0;
    for (const auto& q : ground_truth) {
        const double d = rec_tree.nearest_distance(q);
        comp += squared_distances ? d * d : d;
        if (d <= threshold) ++within;
    }
    m.completion_m = comp / static_cast<double>(ground_truth.size());
    m.completion_ratio_percent =
        100.0 * static_cast<double>(within) / static_cast<double>(ground_truth.size());
    return m;
}

}  // namespace noisyrgbd
