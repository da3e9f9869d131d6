#pragma once

#include <cstdint>
#include <vector>

#include "geo/shape.hpp"

namespace geo {

/// Weighted point set (atoms + nonnegative masses).
struct DiscreteMeasure {
    std::vector<Point> atoms;
    std::vector<double> masses;

    double total() const {
        double s = 0.0;
        for (double m : masses) s += m;
        return s;
    }

    DiscreteMeasure normalized() const;
    void validate() const;
};

/// Sampling region for boundary measures: an explicit box, or the offset
/// K^r (sampled by rejection from the inflated bounding box of the shape).
struct Region {
    enum class Kind { ExplicitBox, Offset };
    Kind kind = Kind::ExplicitBox;
    Box box;           // ExplicitBox only
    double offset = 0; // Offset only

    static Region box_region(Box b) { return Region{Kind::ExplicitBox, std::move(b), 0.0}; }
    static Region offset_region(double r) { return Region{Kind::Offset, Box(), r}; }
};

/// Monte Carlo pushforward of the Lebesgue measure on E through the
/// projection onto the shape. Tie samples are discarded (measure zero).
/// For clouds the atoms are exactly the cloud points; otherwise one atom
/// per accepted sample. Total mass equals vol(E) (the exact box volume,
/// or its Monte Carlo estimate for offset regions).
DiscreteMeasure boundary_measure(const CompactShape& shape, const Region& region,
                                 std::size_t n_samples, std::uint64_t seed);

/// Exact Hausdorff distance between two point clouds.
double hausdorff(const PointCloud& a, const PointCloud& b);
double hausdorff(const CompactShape& a, const CompactShape& b);

struct CoupledMeasures {
    DiscreteMeasure mu;      // pushforward onto K
    DiscreteMeasure nu;      // pushforward onto K2, same sample stream
    double l1 = 0.0;         // vol(E) * mean |p_K(x) - p_K2(x)|
    double l1_stderr = 0.0;
    double volume = 0.0;
    std::size_t accepted = 0;
};

/// Shared-stream boundary measures of two shapes over the same box:
/// a sample is accepted only when its projection is unique on both shapes,
/// so (mu, nu) stay coupled and l1/vol upper-bounds their normalized
/// transport cost by construction.
CoupledMeasures coupled_boundary_measures(const CompactShape& a, const CompactShape& b,
                                          const Box& region, std::size_t n_samples,
                                          std::uint64_t seed);

}  // namespace geo
