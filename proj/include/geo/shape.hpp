#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "geo/nn_index.hpp"
#include "geo/point.hpp"

namespace geo {

class CompactShape;

struct BallShape {
    Point center;
    double radius = 0.0;  // > 0; the shape is the closed solid ball
};

struct BoxShape {
    Box box;
};

struct Segment {
    Point a;
    Point b;
};

struct SegmentSet {
    std::vector<Segment> segments;
};

struct CloudShape {
    PointCloud cloud;
    std::shared_ptr<const NNIndex> index;  // built at construction, immutable
};

struct UnionShape {
    std::vector<CompactShape> members;  // nonempty
};

/// A queryable compact subset of R^d. Immutable after construction and safe
/// for concurrent read queries.
class CompactShape {
  public:
    using Variant = std::variant<CloudShape, BallShape, BoxShape, SegmentSet, UnionShape>;

    static CompactShape cloud(PointCloud pc);
    static CompactShape cloud(std::vector<Point> pts) { return cloud(PointCloud(std::move(pts))); }
    static CompactShape ball(Point center, double radius);
    static CompactShape box(Point lo, Point hi);
    static CompactShape segments(std::vector<Segment> segs);
    static CompactShape union_of(std::vector<CompactShape> members);

    int dim() const { return dim_; }

    const Variant& value() const { return v_; }

    bool is_cloud() const { return std::holds_alternative<CloudShape>(v_); }
    const CloudShape& as_cloud() const { return std::get<CloudShape>(v_); }

    /// True for shapes whose complement has empty medial axis.
    bool convex() const;

    /// Tight axis-aligned bounding box.
    Box bounding_box() const;

  private:
    explicit CompactShape(Variant v);

    Variant v_;
    int dim_ = 0;
};

/// Exact diameter: max pairwise distance for clouds/segment endpoints,
/// 2r for balls, main diagonal for boxes. Unions combine member diameters
/// with exact pairwise cross suprema (attained at extreme points).
double bounding_diameter(const CompactShape& shape);

/// Exact distance between two compact shapes, min |a - b| over a in A, b in B.
double set_distance(const CompactShape& a, const CompactShape& b);

/// Closest point of segment [a, b] to x.
Point closest_on_segment(const Segment& s, const Point& x);

// --- dataset factories used by experiments and tests ---

/// The two-point set {(-spread, 0, ...), (+spread, 0, ...)} in dimension d.
CompactShape make_two_point_cloud(int d, double spread = 1.0);

/// A "comb": `teeth` horizontal rows y = 2^(1-i), i = 1..teeth, each row
/// sampling [0, 1] x {y} with `per_tooth` evenly spaced points (d = 2).
PointCloud make_comb_cloud(int teeth, int per_tooth);

/// n points evenly spaced on the circle of given radius (d = 2).
PointCloud make_circle_cloud(int n, double radius = 1.0, Point center = {0.0, 0.0});

}  // namespace geo
