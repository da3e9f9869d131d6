#pragma once

#include <vector>

#include "geo/shape.hpp"

namespace geo {

/// Set of (near-)nearest points of the shape seen from `x`.
/// All listed points lie within dist + s_tie of x; dist is exact.
struct ProjectionSet {
    Point x;
    double dist = 0.0;
    std::vector<Point> projections;
    double s_tie = 0.0;

    bool unique() const { return projections.size() == 1; }
};

struct EnclosingBall {
    Point center;
    double radius = 0.0;
};

/// Generalized gradient of the distance function at x: direction
/// (x - gamma)/d where (gamma, r) is the smallest ball enclosing the
/// projections of x, and mu = |grad| = sqrt(1 - r^2/d^2) in [0, 1].
struct GradientInfo {
    Point gamma;
    double r = 0.0;
    Point grad;
    double mu = 0.0;
    double dist = 0.0;
};

/// Relative tie slack used when the caller does not pass one.
inline double default_tie_slack(double dist) { return 1e-9 * (1.0 + dist); }

/// Exact Euclidean distance from x to the shape (0 iff x belongs to it).
double distance(const CompactShape& shape, const Point& x);

/// Near-nearest points within distance(x) + s_tie. Pass s_tie < 0 to use
/// the default relative slack. Throws "degenerate projection set" for the
/// exact center of a ball (infinitely many boundary projections).
ProjectionSet projection_set(const CompactShape& shape, const Point& x, double s_tie = -1.0);

/// Smallest ball containing all points (Welzl move-to-front, deterministic
/// input order, support size <= d+1). The returned radius is the exact max
/// distance from the optimal center to the inputs.
EnclosingBall smallest_enclosing_ball(const std::vector<Point>& points);

/// Requires d(x) > 0; throws "gradient undefined on K" otherwise.
GradientInfo gradient(const CompactShape& shape, const Point& x, double s_tie = -1.0);

/// Unique projection p_K(x); throws "point on (numerical) medial axis"
/// when the projection set is not a singleton at the given slack.
Point project(const CompactShape& shape, const Point& x, double s_tie = -1.0);

}  // namespace geo
