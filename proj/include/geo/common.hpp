#pragma once

#include <stdexcept>
#include <string>

namespace geo {

inline constexpr const char* kVersion = "0.1.0";

/// Error raised by geometric/model operations (degenerate queries,
/// infeasible parameters, solver preconditions).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Error raised while parsing user input (files, configs). The CLI maps
/// these to a distinct exit code.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sentinel for "no medial crossing / unbounded" results.
inline constexpr double kInfinity = 1e300;

inline bool is_infinite(double v) { return v >= kInfinity; }

}  // namespace geo
