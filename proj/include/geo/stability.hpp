#pragma once

#include <cstdint>
#include <vector>

#include "geo/medial.hpp"
#include "geo/shape.hpp"

namespace geo {

/// A Monte Carlo estimate with its standard error.
struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::size_t accepted = 0;
    std::size_t ties_discarded = 0;
};

/// vol(E) * mean |p_K(x) - p_K2(x)| over a shared sample stream; samples
/// for which either projection is ambiguous are discarded on both sides,
/// so the estimate is exactly symmetric in (a, b).
McEstimate l1_projection_distance(const CompactShape& a, const CompactShape& b, const Box& region,
                                  std::size_t n_samples, std::uint64_t seed);

struct DeltaLResult {
    McEstimate measure;             // H^d(Delta_L intersect E) estimate
    std::vector<Point> witnesses;   // accepted samples with |p_K - p_K2| >= L
    double tie_fraction = 0.0;
};

/// Measure of the set of points whose projections on the two shapes
/// disagree by at least L.
DeltaLResult delta_L_measure(const CompactShape& a, const CompactShape& b, double L,
                             const Box& region, std::size_t n_samples, std::uint64_t seed);

/// Covering-resolution proxy of a sample set: twice the 95th percentile of
/// nearest-neighbor gaps. Reported alongside every sampled-set check.
double net_resolution(const std::vector<Point>& points);

struct InclusionCheck {
    double delta = 0.0;        // Hausdorff distance of the two shapes
    double mu_lemma = 0.0;     // criticality bound from (L, delta, R)
    double mu_used = 0.0;      // capped below 1 when the bound is vacuous
    bool mu_exceeds_one = false;
    double tolerance = 0.0;    // 2 sqrt(R delta) + net resolution
    double resolution = 0.0;
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::size_t medial_samples = 0;
};

/// Checks that every Delta_L witness with d_K <= R lies within
/// 2 sqrt(R delta) (plus net resolution) of the sampled mu-medial axis of
/// the first shape, with mu = (1 + [(L-delta)/4R]^2)^(-1/2) + 4 sqrt(delta/L).
/// When that bound reaches 1 the check still runs against a mu-capped
/// sampling and is flagged inconclusive with respect to the bound itself.
InclusionCheck check_delta_inclusion(const CompactShape& a, const CompactShape& b, double L,
                                     double R, const std::vector<Point>& witnesses,
                                     std::size_t medial_budget, std::uint64_t seed);

struct CriticalStabilityCheck {
    double eps = 0.0;          // exact Hausdorff distance
    double resolution = 0.0;
    double mu_slack = 0.0;     // criticality tolerance tied to the resolution
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::size_t medial_samples = 0;
};

/// For each sampled medial point x of the first shape, searches the sampled
/// medial axis of the second for y with mu(y) <= mu(x) + 2 sqrt(eps/d(x))
/// within distance 2 sqrt(eps d(x)), up to the sampling resolution.
CriticalStabilityCheck check_critical_stability(const CompactShape& a, const CompactShape& b,
                                                const std::vector<MedialPoint>& mu_points,
                                                std::size_t medial_budget, std::uint64_t seed);

struct HolderPoint {
    double delta_nominal = 0.0;
    double delta_exact = 0.0;  // mean exact Hausdorff distance over trials
    double l1 = 0.0;
    double stderr_ = 0.0;
};

struct HolderCurve {
    std::vector<HolderPoint> points;  // delta decreasing
    double h_emp = 0.0;               // log-log slope of l1 against delta
    double h_ref = 0.0;               // 1 / (2 (2d - 1))
    bool monotone = true;             // nonincreasing within 3 combined sigma
};

/// Perturbs the cloud by scaled sup-norm jitter patterns (shared across the
/// delta sweep for coupling), measures the projection L1 distance per
/// delta, and fits the empirical Holder exponent.
HolderCurve holder_experiment(const PointCloud& cloud, const Box& region,
                              const std::vector<double>& delta_list, std::size_t trials,
                              std::size_t n_samples, std::uint64_t seed);

}  // namespace geo
