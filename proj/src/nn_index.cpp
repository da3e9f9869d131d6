#include "geo/nn_index.hpp"

#include <algorithm>
#include <limits>

namespace geo {

PointCloud::PointCloud(std::vector<Point> pts) : points(std::move(pts)) {
    if (points.empty()) throw Error("empty compact set");
    const int d = points.front().dim();
    if (d < kMinDim || d > kMaxDim) throw Error("point dimension out of range");
    for (const Point& p : points) {
        if (p.dim() != d) throw Error("mixed dimensions in point cloud");
        if (!p.finite()) throw Error("non-finite coordinate in point cloud");
    }
}

Box PointCloud::bounding_box() const {
    Box b(points.front(), points.front());
    for (const Point& p : points) b.expand_to(p);
    return b;
}

namespace {
constexpr std::uint32_t kLeafSize = 8;
}

NNIndex::NNIndex(const PointCloud& cloud) : cloud_(cloud) {
    if (cloud_.points.empty()) throw Error("empty compact set");
    order_.resize(cloud_.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i) order_[i] = i;
    nodes_.reserve(2 * cloud_.size() / kLeafSize + 2);
    nodes_.emplace_back();
    build(0, 0, static_cast<std::uint32_t>(order_.size()), cloud_.bounding_box());
}

void NNIndex::build(int node, std::uint32_t begin, std::uint32_t end, Box bounds) {
    if (end - begin <= kLeafSize) {
        nodes_[node].begin = begin;
        nodes_[node].end = end;
        return;
    }
    // Split the widest extent at its midpoint; fall back to a leaf when the
    // partition degenerates (many identical points).
    int axis = 0;
    double width = -1.0;
    for (int i = 0; i < bounds.dim(); ++i) {
        const double w = bounds.hi[i] - bounds.lo[i];
        if (w > width) {
            width = w;
            axis = i;
        }
    }
    const double split = 0.5 * (bounds.lo[axis] + bounds.hi[axis]);
    auto mid_it = std::partition(order_.begin() + begin, order_.begin() + end,
                                 [&](std::uint32_t i) { return cloud_.points[i][axis] < split; });
    auto mid = static_cast<std::uint32_t>(mid_it - order_.begin());
    if (mid == begin || mid == end) {
        nodes_[node].begin = begin;
        nodes_[node].end = end;
        return;
    }
    nodes_[node].axis = axis;
    nodes_[node].split = split;
    const int left = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    const int right = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[node].left = left;
    nodes_[node].right = right;
    Box lb = bounds, rb = bounds;
    lb.hi[axis] = split;
    rb.lo[axis] = split;
    build(left, begin, mid, lb);
    build(right, mid, end, rb);
}

void NNIndex::nearest_rec(int node, const Point& q, double& best_sq, std::size_t& best_idx) const {
    const Node& n = nodes_[node];
    if (n.axis < 0) {
        for (std::uint32_t k = n.begin; k < n.end; ++k) {
            const std::uint32_t i = order_[k];
            const double d = squared_distance(q, cloud_.points[i]);
            // Strict improvement, or an equal distance with a lower index.
            if (d < best_sq || (d == best_sq && i < best_idx)) {
                best_sq = d;
                best_idx = i;
            }
        }
        return;
    }
    const double delta = q[n.axis] - n.split;
    const int near = delta < 0.0 ? n.left : n.right;
    const int far = delta < 0.0 ? n.right : n.left;
    nearest_rec(near, q, best_sq, best_idx);
    // Equality included: an equally distant lower index may live across the plane.
    if (delta * delta <= best_sq) nearest_rec(far, q, best_sq, best_idx);
}

std::size_t NNIndex::nearest(const Point& q) const {
    double best_sq = std::numeric_limits<double>::infinity();
    std::size_t best_idx = cloud_.size();
    nearest_rec(0, q, best_sq, best_idx);
    return best_idx;
}

double NNIndex::nearest_distance(const Point& q) const {
    return distance(q, cloud_.points[nearest(q)]);
}

// Bounded max-heap of (squared distance, index) candidates; the ordering
// prefers smaller distance then smaller index, matching brute force.
struct NNIndex::KnnHeap {
    std::size_t cap;
    std::vector<std::pair<double, std::size_t>> items;  // max-first heap

    static bool worse(const std::pair<double, std::size_t>& a,
                      const std::pair<double, std::size_t>& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    }

    void offer(double d_sq, std::size_t idx) {
        const std::pair<double, std::size_t> cand{d_sq, idx};
        if (items.size() < cap) {
            items.push_back(cand);
            std::push_heap(items.begin(), items.end(), worse);
        } else if (worse(cand, items.front())) {
            std::pop_heap(items.begin(), items.end(), worse);
            items.back() = cand;
            std::push_heap(items.begin(), items.end(), worse);
        }
    }

    double bound_sq() const {
        return items.size() < cap ? std::numeric_limits<double>::infinity()
                                  : items.front().first;
    }
};

void NNIndex::knn_rec(int node, const Point& q, KnnHeap& heap) const {
    const Node& n = nodes_[node];
    if (n.axis < 0) {
        for (std::uint32_t k = n.begin; k < n.end; ++k) {
            const std::uint32_t i = order_[k];
            heap.offer(squared_distance(q, cloud_.points[i]), i);
        }
        return;
    }
    const double delta = q[n.axis] - n.split;
    const int near = delta < 0.0 ? n.left : n.right;
    const int far = delta < 0.0 ? n.right : n.left;
    knn_rec(near, q, heap);
    if (delta * delta <= heap.bound_sq()) knn_rec(far, q, heap);
}

std::vector<std::size_t> NNIndex::k_nearest(const Point& q, std::size_t k) const {
    KnnHeap heap{std::min(k, cloud_.size()), {}};
    if (heap.cap == 0) return {};
    knn_rec(0, q, heap);
    std::sort(heap.items.begin(), heap.items.end(), KnnHeap::worse);
    std::vector<std::size_t> out;
    out.reserve(heap.items.size());
    for (const auto& [d, i] : heap.items) out.push_back(i);
    return out;
}

void NNIndex::range_rec(int node, const Point& q, double radius_sq,
                        std::vector<std::size_t>& out) const {
    const Node& n = nodes_[node];
    if (n.axis < 0) {
        for (std::uint32_t k = n.begin; k < n.end; ++k) {
            const std::uint32_t i = order_[k];
            if (squared_distance(q, cloud_.points[i]) <= radius_sq) out.push_back(i);
        }
        return;
    }
    const double delta = q[n.axis] - n.split;
    const int near = delta < 0.0 ? n.left : n.right;
    const int far = delta < 0.0 ? n.right : n.left;
    range_rec(near, q, radius_sq, out);
    if (delta * delta <= radius_sq) range_rec(far, q, radius_sq, out);
}

std::vector<std::size_t> NNIndex::range(const Point& q, double radius) const {
    std::vector<std::size_t> out;
    if (radius < 0.0) return out;
    range_rec(0, q, radius * radius, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace geo
