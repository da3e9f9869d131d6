#pragma once

#include "geo/measure.hpp"

namespace geo {

/// One flow of the optimal plan: mass moved from mu atom i to nu atom j.
struct Flow {
    std::size_t from = 0;
    std::size_t to = 0;
    double mass = 0.0;
};

struct TransportPlan {
    std::vector<Flow> flows;
    double cost = 0.0;
};

/// Exact Wasserstein-1 distance with Euclidean ground cost, solved by a
/// transportation network simplex with Bland's anti-cycling rule on the
/// complete bipartite graph. Instances are capped at 2000 atoms per side;
/// larger inputs are refused rather than approximated. The argument order
/// is canonicalized internally, so the cost is bitwise symmetric.
TransportPlan wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace geo
