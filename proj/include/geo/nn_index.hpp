#pragma once

#include <cstddef>
#include <vector>

#include "geo/point.hpp"

namespace geo {

/// A point cloud: nonempty, all points of one dimension, no NaN.
struct PointCloud {
    std::vector<Point> points;

    PointCloud() = default;
    explicit PointCloud(std::vector<Point> pts);

    int dim() const { return points.empty() ? 0 : points.front().dim(); }
    std::size_t size() const { return points.size(); }

    Box bounding_box() const;
};

/// kd-tree over a point cloud. Nearest and range queries return exactly the
/// brute-force answer; equal distances break toward the lowest point index.
/// Immutable after construction, safe for concurrent reads.
class NNIndex {
  public:
    explicit NNIndex(const PointCloud& cloud);

    /// Index of the nearest point (ties -> lowest index).
    std::size_t nearest(const Point& q) const;

    double nearest_distance(const Point& q) const;

    /// The k nearest points ordered by (distance, index); size min(k, n).
    std::vector<std::size_t> k_nearest(const Point& q, std::size_t k) const;

    /// Indices of all points p with |p - q| <= radius (inclusive), ascending.
    std::vector<std::size_t> range(const Point& q, double radius) const;

    const PointCloud& cloud() const { return cloud_; }

  private:
    struct Node {
        int axis = -1;           // -1 marks a leaf
        double split = 0.0;
        int left = -1, right = -1;
        std::uint32_t begin = 0, end = 0;  // leaf range in order_
    };

    struct KnnHeap;

    void build(int node, std::uint32_t begin, std::uint32_t end, Box bounds);
    void nearest_rec(int node, const Point& q, double& best_sq, std::size_t& best_idx) const;
    void knn_rec(int node, const Point& q, KnnHeap& heap) const;
    void range_rec(int node, const Point& q, double radius_sq,
                   std::vector<std::size_t>& out) const;

    PointCloud cloud_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> order_;
};

}  // namespace geo
