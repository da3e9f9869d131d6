#include "geo/distance.hpp"

#include <algorithm>
#include <cmath>

namespace geo {

double distance(const CompactShape& shape, const Point& x) {
    struct Visitor {
        const Point& x;
        double operator()(const CloudShape& c) const { return c.index->nearest_distance(x); }
        double operator()(const BallShape& b) const {
            return std::max(0.0, geo::distance(x, b.center) - b.radius);
        }
        double operator()(const BoxShape& b) const { return geo::distance(x, b.box.clamp(x)); }
        double operator()(const SegmentSet& s) const {
            double best = geo::distance(x, closest_on_segment(s.segments.front(), x));
            for (const Segment& seg : s.segments)
                best = std::min(best, geo::distance(x, closest_on_segment(seg, x)));
            return best;
        }
        double operator()(const UnionShape& u) const {
            double best = distance(u.members.front(), x);
            for (const CompactShape& m : u.members) best = std::min(best, distance(m, x));
            return best;
        }
    };
    if (!x.finite()) throw Error("non-finite query point");
    return std::visit(Visitor{x}, shape.value());
}

namespace {

void append_candidate(std::vector<Point>& out, const Point& p) {
    for (const Point& q : out)
        if (squared_distance(p, q) <= 1e-24 * (1.0 + squared_norm(p))) return;
    out.push_back(p);
}

// Candidate nearest points of one variant within `radius` of x, each with
// its exact distance.
void collect_projections(const CompactShape& shape, const Point& x, double radius,
                         std::vector<std::pair<double, Point>>& out) {
    struct Visitor {
        const CompactShape& shape;
        const Point& x;
        double radius;
        std::vector<std::pair<double, Point>>& out;

        void operator()(const CloudShape& c) const {
            for (std::size_t i : c.index->range(x, radius))
                out.emplace_back(geo::distance(x, c.cloud.points[i]), c.cloud.points[i]);
        }
        void operator()(const BallShape& b) const {
            const double dc = geo::distance(x, b.center);
            if (dc <= b.radius) {
                if (dc == 0.0) throw Error("degenerate projection set");
                out.emplace_back(0.0, x);
                return;
            }
            out.emplace_back(dc - b.radius, b.center + (b.radius / dc) * (x - b.center));
        }
        void operator()(const BoxShape& b) const {
            const Point p = b.box.clamp(x);
            out.emplace_back(geo::distance(x, p), p);
        }
        void operator()(const SegmentSet& s) const {
            for (const Segment& seg : s.segments) {
                const Point p = closest_on_segment(seg, x);
                out.emplace_back(geo::distance(x, p), p);
            }
        }
        void operator()(const UnionShape& u) const {
            for (const CompactShape& m : u.members) collect_projections(m, x, radius, out);
        }
    };
    std::visit(Visitor{shape, x, radius, out}, shape.value());
}

}  // namespace

ProjectionSet projection_set(const CompactShape& shape, const Point& x, double s_tie) {
    if (!x.finite()) throw Error("non-finite query point");
    const double d = distance(shape, x);
    if (s_tie < 0.0) s_tie = default_tie_slack(d);

    ProjectionSet ps;
    ps.x = x;
    ps.dist = d;
    ps.s_tie = s_tie;

    std::vector<std::pair<double, Point>> candidates;
    collect_projections(shape, x, d + s_tie, candidates);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [dist_i, p] : candidates) {
        if (dist_i <= d + s_tie) append_candidate(ps.projections, p);
    }
    if (ps.projections.empty()) throw Error("degenerate projection set");
    return ps;
}

namespace {

// Circumscribed ball of an affinely independent support set (all support
// points on the boundary, center in their affine hull). Gaussian elimination
// with partial pivoting on the Gram system; near-zero pivots (dependent
// support) leave the corresponding coefficient at zero.
EnclosingBall ball_from_support(const std::vector<Point>& support) {
    EnclosingBall ball;
    if (support.empty()) {
        ball.radius = -1.0;  // contains nothing
        return ball;
    }
    const int k = static_cast<int>(support.size()) - 1;
    ball.center = support[0];
    ball.radius = 0.0;
    if (k == 0) return ball;

    double a[kMaxDim][kMaxDim + 1];
    Point u[kMaxDim];
    for (int i = 0; i < k; ++i) u[i] = support[i + 1] - support[0];
    double scale = 0.0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) a[i][j] = dot(u[i], u[j]);
        a[i][k] = 0.5 * squared_norm(u[i]);
        scale = std::max(scale, std::abs(a[i][i]));
    }
    const double tiny = 1e-14 * (scale + 1e-300);

    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) <= tiny) {
            for (int r = col; r < k; ++r) a[r][col] = 0.0;
            continue;
        }
        if (piv != col)
            for (int j = 0; j <= k; ++j) std::swap(a[col][j], a[piv][j]);
        for (int r = col + 1; r < k; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int j = col; j <= k; ++j) a[r][j] -= f * a[col][j];
        }
    }
    double lambda[kMaxDim];
    for (int i = k - 1; i >= 0; --i) {
        if (a[i][i] == 0.0) {
            lambda[i] = 0.0;
            continue;
        }
        double s = a[i][k];
        for (int j = i + 1; j < k; ++j) s -= a[i][j] * lambda[j];
        lambda[i] = s / a[i][i];
    }
    for (int i = 0; i < k; ++i) ball.center += lambda[i] * u[i];
    double r_sq = 0.0;
    for (const Point& p : support) r_sq = std::max(r_sq, squared_distance(ball.center, p));
    ball.radius = std::sqrt(r_sq);
    return ball;
}

bool ball_contains(const EnclosingBall& b, const Point& p) {
    if (b.radius < 0.0) return false;
    const double r_sq = b.radius * b.radius;
    return squared_distance(b.center, p) <= r_sq + 1e-13 * (1.0 + r_sq);
}

EnclosingBall welzl(std::vector<const Point*>& pts, std::size_t end,
                    std::vector<Point>& support, int max_support) {
    if (end == 0 || static_cast<int>(support.size()) == max_support)
        return ball_from_support(support);
    EnclosingBall ball = welzl(pts, end - 1, support, max_support);
    const Point* p = pts[end - 1];
    if (ball_contains(ball, *p)) return ball;
    support.push_back(*p);
    ball = welzl(pts, end - 1, support, max_support);
    support.pop_back();
    // Move-to-front keeps hard points early in later passes.
    for (std::size_t i = end - 1; i > 0; --i) pts[i] = pts[i - 1];
    pts[0] = p;
    return ball;
}

}  // namespace

EnclosingBall smallest_enclosing_ball(const std::vector<Point>& points) {
    if (points.empty()) throw Error("empty point list");
    const int d = points.front().dim();
    std::vector<const Point*> ptrs;
    ptrs.reserve(points.size());
    for (const Point& p : points) ptrs.push_back(&p);
    std::vector<Point> support;
    support.reserve(d + 1);
    EnclosingBall ball = welzl(ptrs, ptrs.size(), support, d + 1);
    // Pin the radius to the exact farthest input from the computed center.
    double r_sq = 0.0;
    for (const Point& p : points) r_sq = std::max(r_sq, squared_distance(ball.center, p));
    ball.radius = std::sqrt(r_sq);
    return ball;
}

GradientInfo gradient(const CompactShape& shape, const Point& x, double s_tie) {
    const ProjectionSet ps = projection_set(shape, x, s_tie);
    if (ps.dist <= 0.0) throw Error("gradient undefined on K");
    const EnclosingBall ball = smallest_enclosing_ball(ps.projections);

    GradientInfo g;
    g.dist = ps.dist;
    g.gamma = ball.center;
    g.r = ball.radius;
    g.grad = (1.0 / ps.dist) * (x - ball.center);
    const double radicand = 1.0 - (ball.radius * ball.radius) / (ps.dist * ps.dist);
    if (radicand < -1e-9) throw Error("gradient invariant violated: enclosing radius exceeds distance");
    g.mu = std::sqrt(std::clamp(radicand, 0.0, 1.0));
    return g;
}

Point project(const CompactShape& shape, const Point& x, double s_tie) {
    const ProjectionSet ps = projection_set(shape, x, s_tie);
    if (!ps.unique()) throw Error("point on (numerical) medial axis");
    return ps.projections.front();
}

}  // namespace geo
