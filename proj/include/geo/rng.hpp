#pragma once

#include <cstdint>
#include <vector>

#include "geo/point.hpp"

namespace geo {

/// SplitMix64 generator (Steele, Lea, Flood; the java.util.SplittableRandom
/// mixer). State advances by the 64-bit golden-ratio increment and each
/// output is a bijective mix of the state, so the stream at seed s is the
/// counter sequence mix(s + k*gamma). All randomized results in this
/// project are bit-reproducible given the 64-bit seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // 64-bit multiply-shift; bias is negligible for the n used here.
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(n));
    }

    Point uniform_in(const Box& box) {
        Point p(box.dim());
        for (int i = 0; i < box.dim(); ++i) p[i] = uniform(box.lo[i], box.hi[i]);
        return p;
    }

  private:
    std::uint64_t state_;
};

/// Derives the seed of an independent substream. Pure function of
/// (root seed, stream index): results never depend on worker count or
/// evaluation order.
inline std::uint64_t derive_stream_seed(std::uint64_t root_seed, std::uint64_t stream) {
    std::uint64_t z = root_seed + (stream + 1) * 0xD1B54A32D192ED03ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// n i.i.d. uniform points in `box`, deterministic given seed.
/// Rejects degenerate (zero-volume) boxes.
inline std::vector<Point> sample_uniform(const Box& box, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw Error("sample count must be >= 1");
    if (box.degenerate()) throw Error("degenerate box: zero volume");
    Rng rng(seed);
    std::vector<Point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(rng.uniform_in(box));
    return out;
}

}  // namespace geo
