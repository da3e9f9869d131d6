#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "geo/shape.hpp"

namespace geo {

/// Smallest distance from the shape to its medial axis. Clouds: half the
/// minimal pairwise gap. Convex shapes: +inf sentinel. Unions: min over
/// member reaches and half the pairwise member separations.
double estimate_reach(const CompactShape& shape);

/// Volume of the unit ball in R^k (1, 2, pi, 4pi/3, ...). This is the
/// normalization used for the curvature masses Phi_i = c_i / omega_{d-i};
/// raw polynomial coefficients are always reported alongside.
double unit_ball_volume(int k);

/// How atoms of a pushforward measure are binned into Borel regions of K.
struct RegionScheme {
    enum class Kind {
        Global,       // one region for the whole shape
        CloudPoints,  // one region per cloud point
        BoxStrata,    // by clamp codimension: s0 interior, s1 face, ... sd vertex
    };
    Kind kind = Kind::Global;

    std::size_t count(const CompactShape& shape) const;
    std::vector<std::string> names(const CompactShape& shape) const;
    /// Label of the accepted sample with projection p (nearest_index valid
    /// for clouds only).
    std::size_t label(const CompactShape& shape, const Point& x, const Point& p,
                      std::size_t nearest_index) const;
};

struct CurvatureFit {
    std::vector<std::string> region_names;
    std::vector<std::vector<double>> coeffs;  // per region, degrees 0..d
    std::vector<std::vector<double>> phi;     // coeffs[i] / omega_{d-i}
    std::vector<double> residual_rms;         // per region
    std::vector<std::vector<double>> masses;  // per region x r-grid, the raw MC masses
    std::vector<double> r_grid;
    double reach_used = 0.0;
    std::size_t samples_per_r = 0;
    std::uint64_t seed = 0;
};

/// d+3 Chebyshev-spaced radii in [0.2, 0.8] * scale, where scale is the
/// reach (or diam/2 for shapes of infinite reach).
std::vector<double> default_r_grid(const CompactShape& shape, std::size_t count = 0);

/// Estimates the tube-formula polynomial: boundary-measure masses per
/// region at each radius, then a degree-d weighted least-squares fit per
/// region. Each radius runs its own stratified pass (one jittered sample
/// per cell of an axis grid over the inflated bounding box), which cuts
/// the indicator noise to O(n^{-(d+1)/(2d)}); the effective sample count
/// per radius is the closest d-th power to n_samples.
CurvatureFit steiner_fit(const CompactShape& shape, const RegionScheme& regions,
                         const std::vector<double>& r_grid, std::size_t n_samples,
                         std::uint64_t seed);

/// Exact per-stratum tube masses of the unit cube in R^3 at offset r:
/// {interior, faces, edges, vertices} = {1, 6r, 3 pi r^2, (4/3) pi r^3}.
std::array<double, 4> cube_oracle(double r);

}  // namespace geo
