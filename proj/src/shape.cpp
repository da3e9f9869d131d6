#include "geo/shape.hpp"

#include <algorithm>
#include <cmath>

namespace geo {

namespace {

int variant_dim(const CompactShape::Variant& v) {
    struct Visitor {
        int operator()(const CloudShape& c) const { return c.cloud.dim(); }
        int operator()(const BallShape& b) const { return b.center.dim(); }
        int operator()(const BoxShape& b) const { return b.box.dim(); }
        int operator()(const SegmentSet& s) const {
            return s.segments.empty() ? 0 : s.segments.front().a.dim();
        }
        int operator()(const UnionShape& u) const {
            return u.members.empty() ? 0 : u.members.front().dim();
        }
    };
    return std::visit(Visitor{}, v);
}

}  // namespace

CompactShape::CompactShape(Variant v) : v_(std::move(v)) {
    dim_ = variant_dim(v_);
    if (dim_ < kMinDim || dim_ > kMaxDim) throw Error("shape dimension out of range");
}

CompactShape CompactShape::cloud(PointCloud pc) {
    CloudShape c;
    c.index = std::make_shared<NNIndex>(pc);
    c.cloud = std::move(pc);
    return CompactShape(Variant(std::move(c)));
}

CompactShape CompactShape::ball(Point center, double radius) {
    if (!(radius > 0.0)) throw Error("ball radius must be positive");
    if (!center.finite()) throw Error("non-finite ball center");
    return CompactShape(Variant(BallShape{center, radius}));
}

CompactShape CompactShape::box(Point lo, Point hi) {
    return CompactShape(Variant(BoxShape{Box(lo, hi)}));
}

CompactShape CompactShape::segments(std::vector<Segment> segs) {
    if (segs.empty()) throw Error("empty compact set");
    const int d = segs.front().a.dim();
    for (const Segment& s : segs) {
        if (s.a.dim() != d || s.b.dim() != d) throw Error("mixed dimensions in segment set");
        if (!s.a.finite() || !s.b.finite()) throw Error("non-finite segment endpoint");
    }
    return CompactShape(Variant(SegmentSet{std::move(segs)}));
}

CompactShape CompactShape::union_of(std::vector<CompactShape> members) {
    if (members.empty()) throw Error("empty compact set");
    const int d = members.front().dim();
    for (const CompactShape& m : members)
        if (m.dim() != d) throw Error("mixed dimensions in union");
    return CompactShape(Variant(UnionShape{std::move(members)}));
}

bool CompactShape::convex() const {
    struct Visitor {
        bool operator()(const CloudShape& c) const { return c.cloud.size() == 1; }
        bool operator()(const BallShape&) const { return true; }
        bool operator()(const BoxShape&) const { return true; }
        bool operator()(const SegmentSet& s) const { return s.segments.size() == 1; }
        bool operator()(const UnionShape&) const { return false; }
    };
    return std::visit(Visitor{}, v_);
}

Box CompactShape::bounding_box() const {
    struct Visitor {
        Box operator()(const CloudShape& c) const { return c.cloud.bounding_box(); }
        Box operator()(const BallShape& b) const {
            Box out(b.center, b.center);
            return out.inflated(b.radius);
        }
        Box operator()(const BoxShape& b) const { return b.box; }
        Box operator()(const SegmentSet& s) const {
            Box out(s.segments.front().a, s.segments.front().a);
            for (const Segment& seg : s.segments) {
                out.expand_to(seg.a);
                out.expand_to(seg.b);
            }
            return out;
        }
        Box operator()(const UnionShape& u) const {
            Box out = u.members.front().bounding_box();
            for (const CompactShape& m : u.members) {
                const Box b = m.bounding_box();
                out.expand_to(b.lo);
                out.expand_to(b.hi);
            }
            return out;
        }
    };
    return std::visit(Visitor{}, v_);
}

Point closest_on_segment(const Segment& s, const Point& x) {
    const Point ab = s.b - s.a;
    const double len_sq = squared_norm(ab);
    if (len_sq == 0.0) return s.a;
    double t = dot(x - s.a, ab) / len_sq;
    t = std::clamp(t, 0.0, 1.0);
    return s.a + t * ab;
}

namespace {

// Extreme-point sets: the diameter of a union and the cross supremum
// sup{|a-b|} are attained at these points (corners/endpoints), with balls
// handled by adding the radius to the center distance.
std::vector<Point> hull_points(const CompactShape& s) {
    struct Visitor {
        std::vector<Point> operator()(const CloudShape& c) const { return c.cloud.points; }
        std::vector<Point> operator()(const BallShape& b) const { return {b.center}; }
        std::vector<Point> operator()(const BoxShape& b) const {
            const int d = b.box.dim();
            std::vector<Point> corners;
            corners.reserve(std::size_t{1} << d);
            for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
                Point p(d);
                for (int i = 0; i < d; ++i) p[i] = (mask >> i) & 1 ? b.box.hi[i] : b.box.lo[i];
                corners.push_back(p);
            }
            return corners;
        }
        std::vector<Point> operator()(const SegmentSet& s) const {
            std::vector<Point> out;
            out.reserve(2 * s.segments.size());
            for (const Segment& seg : s.segments) {
                out.push_back(seg.a);
                out.push_back(seg.b);
            }
            return out;
        }
        std::vector<Point> operator()(const UnionShape&) const { return {}; }  // flattened below
    };
    if (const auto* u = std::get_if<UnionShape>(&s.value())) {
        std::vector<Point> out;
        for (const CompactShape& m : u->members) {
            auto mp = hull_points(m);
            out.insert(out.end(), mp.begin(), mp.end());
        }
        return out;
    }
    return std::visit(Visitor{}, s.value());
}

// Radius to add around every hull point (0 except for balls).
double hull_inflate(const CompactShape& s) {
    if (const auto* b = std::get_if<BallShape>(&s.value())) return b->radius;
    return 0.0;
}

double flat_diameter(const std::vector<const CompactShape*>& parts) {
    double best = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto pi = hull_points(*parts[i]);
        const double ri = hull_inflate(*parts[i]);
        for (std::size_t j = i; j < parts.size(); ++j) {
            const auto pj = (j == i) ? pi : hull_points(*parts[j]);
            const double rj = hull_inflate(*parts[j]);
            for (const Point& a : pi)
                for (const Point& b : pj) best = std::max(best, distance(a, b) + ri + rj);
        }
    }
    return best;
}

void flatten(const CompactShape& s, std::vector<const CompactShape*>& out) {
    if (const auto* u = std::get_if<UnionShape>(&s.value())) {
        for (const CompactShape& m : u->members) flatten(m, out);
    } else {
        out.push_back(&s);
    }
}

}  // namespace

double bounding_diameter(const CompactShape& shape) {
    if (const auto* b = std::get_if<BallShape>(&shape.value())) return 2.0 * b->radius;
    if (const auto* b = std::get_if<BoxShape>(&shape.value())) return b->box.diameter();
    std::vector<const CompactShape*> parts;
    flatten(shape, parts);
    return flat_diameter(parts);
}

namespace {

double primitive_distance(const CompactShape& a, const CompactShape& b);

double distance_point_to(const CompactShape& s, const Point& x) {
    struct Visitor {
        const Point& x;
        double operator()(const CloudShape& c) const { return c.index->nearest_distance(x); }
        double operator()(const BallShape& b) const {
            return std::max(0.0, distance(x, b.center) - b.radius);
        }
        double operator()(const BoxShape& b) const { return distance(x, b.box.clamp(x)); }
        double operator()(const SegmentSet& s) const {
            double best = distance(x, closest_on_segment(s.segments.front(), x));
            for (const Segment& seg : s.segments)
                best = std::min(best, distance(x, closest_on_segment(seg, x)));
            return best;
        }
        double operator()(const UnionShape& u) const {
            double best = distance_point_to(u.members.front(), x);
            for (const CompactShape& m : u.members)
                best = std::min(best, distance_point_to(m, x));
            return best;
        }
    };
    return std::visit(Visitor{x}, s.value());
}

// Distance between a segment and a single convex shape: the map
// t -> d(shape, s(t)) is convex, so golden-section search converges to the
// global minimum. Callers must split non-convex targets first.
double segment_to_convex(const Segment& seg, const CompactShape& other) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 1.0;
    auto eval = [&](double t) {
        return distance_point_to(other, seg.a + t * (seg.b - seg.a));
    };
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = eval(c), fd = eval(d);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = eval(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = eval(d);
        }
    }
    return std::min({eval(lo), eval(hi), std::min(fc, fd)});
}

double primitive_distance(const CompactShape& a, const CompactShape& b) {
    // Cloud: exact minimum over its points.
    if (const auto* c = std::get_if<CloudShape>(&a.value())) {
        double best = distance_point_to(b, c->cloud.points.front());
        for (const Point& p : c->cloud.points) best = std::min(best, distance_point_to(b, p));
        return best;
    }
    if (std::holds_alternative<CloudShape>(b.value())) return primitive_distance(b, a);

    if (const auto* ball = std::get_if<BallShape>(&a.value()))
        return std::max(0.0, distance_point_to(b, ball->center) - ball->radius);
    if (std::holds_alternative<BallShape>(b.value())) return primitive_distance(b, a);

    if (const auto* segs = std::get_if<SegmentSet>(&a.value())) {
        double best = kInfinity;
        for (const Segment& s : segs->segments) {
            // the golden-section objective must be convex: split multi-segment
            // targets into their members
            if (const auto* other_segs = std::get_if<SegmentSet>(&b.value())) {
                for (const Segment& t : other_segs->segments)
                    best = std::min(
                        best, segment_to_convex(s, CompactShape::segments({t})));
            } else {
                best = std::min(best, segment_to_convex(s, b));
            }
        }
        return best;
    }
    if (std::holds_alternative<SegmentSet>(b.value())) return primitive_distance(b, a);

    // box-box: componentwise gaps.
    const Box& ba = std::get<BoxShape>(a.value()).box;
    const Box& bb = std::get<BoxShape>(b.value()).box;
    double s = 0.0;
    for (int i = 0; i < ba.dim(); ++i) {
        const double gap = std::max({0.0, ba.lo[i] - bb.hi[i], bb.lo[i] - ba.hi[i]});
        s += gap * gap;
    }
    return std::sqrt(s);
}

}  // namespace

double set_distance(const CompactShape& a, const CompactShape& b) {
    std::vector<const CompactShape*> pa, pb;
    flatten(a, pa);
    flatten(b, pb);
    double best = kInfinity;
    for (const CompactShape* x : pa)
        for (const CompactShape* y : pb) best = std::min(best, primitive_distance(*x, *y));
    return best;
}

CompactShape make_two_point_cloud(int d, double spread) {
    Point a(d), b(d);
    a[0] = -spread;
    b[0] = spread;
    return CompactShape::cloud({a, b});
}

PointCloud make_comb_cloud(int teeth, int per_tooth) {
    if (teeth < 1 || per_tooth < 2) throw Error("comb needs >= 1 tooth and >= 2 points per tooth");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(teeth) * per_tooth);
    for (int i = 1; i <= teeth; ++i) {
        const double y = std::ldexp(1.0, 1 - i);  // 2^(1-i): 1, 1/2, 1/4, ...
        for (int j = 0; j < per_tooth; ++j) {
            const double x = static_cast<double>(j) / (per_tooth - 1);
            pts.push_back({x, y});
        }
    }
    return PointCloud(std::move(pts));
}

PointCloud make_circle_cloud(int n, double radius, Point center) {
    if (n < 2) throw Error("circle cloud needs >= 2 points");
    std::vector<Point> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        pts.push_back({center[0] + radius * std::cos(t), center[1] + radius * std::sin(t)});
    }
    return PointCloud(std::move(pts));
}

}  // namespace geo
