#include "geo/medial.hpp"

#include <algorithm>
#include <cmath>

#include "geo/parallel.hpp"
#include "geo/rng.hpp"

namespace geo {

namespace {

// First bisector crossing against every other site. For sites ahead of the
// ray (positive denominator), the crossing time of the bisector of p and q
// is (|x-q|^2 - |x-p|^2) / (2 <v, q-p>).
double tau_cloud(const CloudShape& c, const Point& x, const Point& p, const Point& v) {
    double best = kInfinity;
    const int d = x.dim();
    for (const Point& q : c.cloud.points) {
        if (squared_distance(q, p) == 0.0) continue;
        double den = 0.0, num = 0.0;
        for (int i = 0; i < d; ++i) {
            const double qp = q[i] - p[i];
            den += v[i] * qp;
            num += (p[i] - q[i]) * (2.0 * x[i] - p[i] - q[i]);
        }
        if (den <= 0.0) continue;
        const double t = num / (2.0 * den);
        if (t < best) best = std::max(t, 0.0);
    }
    return best;
}

// Guarded march for segment sets and unions: |y(t) - p| - d_K(y(t)) is zero
// until the crossing and strictly positive after, so bracket then bisect.
double tau_march(const CompactShape& shape, const Point& x, const Point& p, const Point& v,
                 double dist) {
    const double scale = bounding_diameter(shape) + dist + 1.0;
    const double horizon = 8.0 * scale;
    auto excess = [&](double t) {
        const Point y = x + t * v;
        return geo::distance(y, p) - distance(shape, y);
    };
    const double f_tol = 1e-12 * scale;
    const double step = horizon / 4096.0;
    double lo = 0.0;
    double hi = -1.0;
    for (double t = step; t <= horizon; t += step) {
        if (excess(t) > f_tol) {
            hi = t;
            break;
        }
        lo = t;
    }
    if (hi < 0.0) return kInfinity;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > f_tol)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

struct RayStart {
    Point p;
    Point v;
    double dist;
};

RayStart ray_start(const CompactShape& shape, const Point& x) {
    const ProjectionSet ps = projection_set(shape, x);
    if (ps.dist <= 0.0) throw Error("gradient undefined on K");
    if (!ps.unique()) throw Error("point on (numerical) medial axis");
    RayStart r;
    r.p = ps.projections.front();
    r.dist = ps.dist;
    r.v = (1.0 / ps.dist) * (x - r.p);
    return r;
}

double crossing_time(const CompactShape& shape, const Point& x, const RayStart& rs) {
    if (shape.convex()) return kInfinity;
    if (shape.is_cloud()) return tau_cloud(shape.as_cloud(), x, rs.p, rs.v);
    return tau_march(shape, x, rs.p, rs.v, rs.dist);
}

}  // namespace

double tau(const CompactShape& shape, const Point& x) {
    const RayStart rs = ray_start(shape, x);
    return crossing_time(shape, x, rs);
}

Point psi(const CompactShape& shape, const Point& x, double t) {
    if (t < 0.0) throw Error("negative flow time");
    const RayStart rs = ray_start(shape, x);
    if (t > 0.0 && t > crossing_time(shape, x, rs)) throw Error("crossed medial axis");
    return x + t * rs.v;
}

MedialPoint ell(const CompactShape& shape, const Point& x) {
    const RayStart rs = ray_start(shape, x);
    const double t = crossing_time(shape, x, rs);
    if (is_infinite(t)) throw Error("no medial crossing along gradient ray");

    MedialPoint mp;
    mp.m = x + t * rs.v;
    mp.source = x;
    mp.dist = distance(shape, mp.m);
    // Enlarged slack absorbs the ray-landing roundoff so both witnesses
    // register as ties.
    const double slack = 1e-7 * (1.0 + mp.dist);
    ProjectionSet ps = projection_set(shape, mp.m, slack);
    mp.witnesses = std::move(ps.projections);
    bool has_p = false;
    for (const Point& w : mp.witnesses)
        if (squared_distance(w, rs.p) <= 1e-24 * (1.0 + squared_norm(rs.p))) has_p = true;
    if (!has_p) mp.witnesses.push_back(rs.p);
    if (mp.witnesses.size() < 2) throw Error("medial crossing lost to roundoff");

    const EnclosingBall ball = smallest_enclosing_ball(mp.witnesses);
    const double radicand = 1.0 - (ball.radius * ball.radius) / (mp.dist * mp.dist);
    if (radicand < -1e-9) throw Error("gradient invariant violated: enclosing radius exceeds distance");
    mp.mu = std::sqrt(std::clamp(radicand, 0.0, 1.0));
    return mp;
}

MedialSample sample_mu_medial(const CompactShape& shape, double mu_max, double eps,
                              std::size_t n_rays, std::uint64_t seed) {
    if (!(mu_max > 0.0 && mu_max < 1.0)) throw Error("mu_max must lie in (0, 1)");
    if (!(eps > 0.0)) throw Error("eps must be positive");
    if (n_rays < 1) throw Error("sample count must be >= 1");

    // Medial points with criticality <= mu_max lie within
    // diam / sqrt(2 (1 - mu^2)) of the shape, so sources beyond that
    // inflation cannot contribute retained samples.
    const double diam = bounding_diameter(shape);
    const double reach_bound = diam / std::sqrt(2.0 * (1.0 - mu_max * mu_max));
    const Box source_box = shape.bounding_box().inflated(reach_bound + 1e-3 * (1.0 + diam));

    MedialSample out;
    out.rays_cast = n_rays;
    std::vector<std::vector<MedialPoint>> per_chunk(kWorkChunks);
    parallel_chunks(n_rays, [&](std::size_t c, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng(derive_stream_seed(seed, i));
            const Point x = rng.uniform_in(source_box);
            try {
                MedialPoint mp = ell(shape, x);
                if (mp.mu <= mu_max && mp.dist >= eps) per_chunk[c].push_back(std::move(mp));
            } catch (const Error&) {
                // tie at source, interior point, or escaping ray: discarded
            }
        }
    });
    for (std::vector<MedialPoint>& chunk : per_chunk) {
        out.rays_retained += chunk.size();
        for (MedialPoint& mp : chunk) out.points.push_back(std::move(mp));
    }
    return out;
}

CoveringReport greedy_net(const std::vector<Point>& points, double eta) {
    if (!(eta > 0.0)) throw Error("net radius must be positive");
    CoveringReport rep;
    rep.eta = eta;
    if (points.empty()) return rep;

    std::vector<Point> sorted = points;
    std::sort(sorted.begin(), sorted.end(),
              [](const Point& a, const Point& b) { return lex_less(a, b); });

    const double eta_sq = eta * eta;
    for (const Point& p : sorted) {
        bool covered = false;
        for (const Point& c : rep.centers) {
            if (squared_distance(p, c) <= eta_sq) {
                covered = true;
                break;
            }
        }
        if (!covered) rep.centers.push_back(p);
    }
    rep.count = rep.centers.size();
    return rep;
}

namespace {

double fit_log_slope(const std::vector<CoveringRow>& rows) {
    // least squares of log N against log(1/eta)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const CoveringRow& r : rows) {
        if (r.count == 0) continue;
        const double lx = std::log(1.0 / r.eta);
        const double ly = std::log(static_cast<double>(r.count));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

}  // namespace

CoveringScaling covering_scaling_experiment(const CompactShape& shape, double mu, double eps,
                                            const std::vector<double>& eta_list,
                                            std::size_t n_rays, std::uint64_t seed) {
    for (std::size_t i = 1; i < eta_list.size(); ++i)
        if (!(eta_list[i] < eta_list[i - 1])) throw Error("eta list must be strictly decreasing");

    const MedialSample full = sample_mu_medial(shape, mu, eps, n_rays, seed);
    const MedialSample half = sample_mu_medial(shape, mu, eps, n_rays / 2, seed);

    std::vector<Point> pts_full, pts_half;
    pts_full.reserve(full.points.size());
    for (const MedialPoint& mp : full.points) pts_full.push_back(mp.m);
    pts_half.reserve(half.points.size());
    for (const MedialPoint& mp : half.points) pts_half.push_back(mp.m);

    CoveringScaling out;
    out.retained = full.points.size();
    out.rays = n_rays;
    out.mu_filter = mu;
    out.eps_filter = eps;
    for (double eta : eta_list) {
        CoveringRow row;
        row.eta = eta;
        row.count = greedy_net(pts_full, eta).count;
        row.count_half_budget = greedy_net(pts_half, eta).count;
        const double delta = std::abs(static_cast<double>(row.count) -
                                      static_cast<double>(row.count_half_budget));
        // 5% relative, with one center of absolute slack so the tiny-count
        // rows are not dominated by +-1 quantization.
        row.stabilized =
            row.count > 0 && delta <= std::max(1.0, 0.05 * static_cast<double>(row.count));
        out.rows.push_back(row);
    }
    out.slope = fit_log_slope(out.rows);
    out.all_stabilized = std::all_of(out.rows.begin(), out.rows.end(),
                                     [](const CoveringRow& r) { return r.stabilized; });
    return out;
}

std::size_t boundary_covering(const CompactShape& shape, double r, double eps,
                              std::size_t n_samples, std::uint64_t seed) {
    if (!(r > 0.0) || !(eps > 0.0)) throw Error("offset radius and net radius must be positive");
    const Box box = shape.bounding_box().inflated(r);

    std::vector<std::vector<Point>> per_chunk(kWorkChunks);
    parallel_chunks(n_samples, [&](std::size_t c, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng(derive_stream_seed(seed, i));
            Point y = rng.uniform_in(box);
            try {
                double d = distance(shape, y);
                if (d <= 0.0 || d >= r) continue;
                // Walk outward: along each gradient ray the distance grows
                // linearly until the medial axis, so either land exactly on
                // the level set or hop just past the crossing and continue.
                bool landed = false;
                for (int hop = 0; hop < 64; ++hop) {
                    const RayStart rs = ray_start(shape, y);
                    const double need = r - rs.dist;
                    const double t_cross = crossing_time(shape, y, rs);
                    if (t_cross >= need) {
                        y = y + need * rs.v;
                        landed = true;
                        break;
                    }
                    y = y + (t_cross + 1e-9 * (1.0 + t_cross)) * rs.v;
                }
                if (!landed) continue;
                d = distance(shape, y);
                if (std::abs(d - r) > 1e-10 * (1.0 + r)) continue;
                per_chunk[c].push_back(y);
            } catch (const Error&) {
                // tie somewhere along the walk: discarded
            }
        }
    });
    std::vector<Point> on_level;
    for (const std::vector<Point>& chunk : per_chunk)
        on_level.insert(on_level.end(), chunk.begin(), chunk.end());
    if (on_level.empty()) return 0;
    return greedy_net(on_level, eps).count;
}

}  // namespace geo
