#pragma once

#include <cstdint>
#include <vector>

#include "geo/distance.hpp"
#include "geo/shape.hpp"

namespace geo {

/// A sampled medial-axis point: >= 2 witnesses on K equidistant from m.
struct MedialPoint {
    Point m;
    double dist = 0.0;  // d_K(m)
    double mu = 0.0;    // criticality |grad d_K| at m
    std::vector<Point> witnesses;
    Point source;       // the ray origin x with ell(x) = m
};

/// Greedy net over a finite sample: centers pairwise > eta apart and every
/// input within eta of some center. Being a maximal eta-packing that is
/// also an eta-cover, the count N sits in the sandwich
/// N(X, eta) <= N <= N(X, eta/2) for the sampled set X.
struct CoveringReport {
    double eta = 0.0;
    std::vector<Point> centers;
    std::size_t count = 0;
    double mu_filter = -1.0;   // descriptor of the sampled set, if any
    double eps_filter = -1.0;
};

/// Travel time along the gradient ray from x to the first medial-axis
/// crossing; kInfinity when the ray escapes without crossing. Exact
/// two-site formula for clouds, +inf for convex shapes, guarded
/// march-and-bisect for segment sets and unions.
double tau(const CompactShape& shape, const Point& x);

/// x + t * grad d_K(x); requires 0 <= t <= tau(x).
Point psi(const CompactShape& shape, const Point& x, double t);

/// First medial-axis point hit by the gradient ray from x.
MedialPoint ell(const CompactShape& shape, const Point& x);

struct MedialSample {
    std::vector<MedialPoint> points;
    std::size_t rays_cast = 0;
    std::size_t rays_retained = 0;
};

/// Casts n_rays gradient rays from uniform sources around the shape and
/// keeps medial hits with mu <= mu_max and d_K >= eps. Deterministic per
/// seed; ray substreams are derived per ray index, so results do not
/// depend on thread count.
MedialSample sample_mu_medial(const CompactShape& shape, double mu_max, double eps,
                              std::size_t n_rays, std::uint64_t seed);

CoveringReport greedy_net(const std::vector<Point>& points, double eta);

struct CoveringRow {
    double eta = 0.0;
    std::size_t count = 0;
    std::size_t count_half_budget = 0;
    bool stabilized = false;
};

struct CoveringScaling {
    std::vector<CoveringRow> rows;
    double slope = 0.0;          // log N vs log(1/eta), least squares
    bool all_stabilized = false;
    std::size_t retained = 0;
    std::size_t rays = 0;
    double mu_filter = 0.0;      // the (mu, eps) filter that produced the set
    double eps_filter = 0.0;
};

/// Covering numbers of the sampled mu-medial axis across a decreasing list
/// of radii. Stabilization compares against the half-budget prefix run.
CoveringScaling covering_scaling_experiment(const CompactShape& shape, double mu, double eps,
                                            const std::vector<double>& eta_list,
                                            std::size_t n_rays, std::uint64_t seed);

/// Monte Carlo covering-number estimate of the offset boundary d_K = r:
/// samples are walked outward along gradient rays onto the level set and
/// greedily netted at radius eps.
std::size_t boundary_covering(const CompactShape& shape, double r, double eps,
                              std::size_t n_samples, std::uint64_t seed);

}  // namespace geo
