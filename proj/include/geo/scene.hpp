#pragma once

#include <cstdint>

#include "geo/common.hpp"
#include "geo/point.hpp"

namespace geo {

/// Common knobs of a run: ambient dimension, seed, sample budgets and
/// tolerances. Validated before any experiment starts.
struct SceneConfig {
    int dim = 2;
    std::uint64_t seed = 0;
    std::size_t samples = 10000;
    double tie_slack = -1.0;      // relative slack; < 0 selects the default
    double fit_tolerance = 1e-9;

    void validate() const {
        if (dim < kMinDim || dim > kMaxDim) throw Error("dimension must lie in [2, 8]");
        if (samples < 1) throw Error("sample budget must be >= 1");
        if (tie_slack == 0.0) throw Error("tie slack must be positive (or negative for default)");
        if (!(fit_tolerance > 0.0)) throw Error("fit tolerance must be positive");
    }
};

}  // namespace geo
