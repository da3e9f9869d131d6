#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "geo/common.hpp"

namespace geo {

/// Maximum supported ambient dimension.
inline constexpr int kMaxDim = 8;
inline constexpr int kMinDim = 2;

/// A point (or vector) of runtime dimension d, 2 <= d <= 8.
/// Stored inline, cheap to copy; the dimension is fixed per scene.
class Point {
  public:
    Point() = default;

    explicit Point(int dim) : dim_(dim) {
        if (dim < 1 || dim > kMaxDim) throw Error("point dimension out of range");
        coords_.fill(0.0);
    }

    Point(std::initializer_list<double> values) {
        if (values.size() < 1 || values.size() > static_cast<std::size_t>(kMaxDim))
            throw Error("point dimension out of range");
        dim_ = static_cast<int>(values.size());
        int i = 0;
        for (double v : values) coords_[i++] = v;
    }

    static Point from(const std::vector<double>& values) {
        if (values.empty() || values.size() > static_cast<std::size_t>(kMaxDim))
            throw Error("point dimension out of range");
        Point p(static_cast<int>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i) p.coords_[i] = values[i];
        return p;
    }

    int dim() const { return dim_; }

    double operator[](int i) const { return coords_[i]; }
    double& operator[](int i) { return coords_[i]; }

    bool finite() const {
        for (int i = 0; i < dim_; ++i)
            if (!std::isfinite(coords_[i])) return false;
        return true;
    }

    Point& operator+=(const Point& o) {
        for (int i = 0; i < dim_; ++i) coords_[i] += o.coords_[i];
        return *this;
    }
    Point& operator-=(const Point& o) {
        for (int i = 0; i < dim_; ++i) coords_[i] -= o.coords_[i];
        return *this;
    }
    Point& operator*=(double s) {
        for (int i = 0; i < dim_; ++i) coords_[i] *= s;
        return *this;
    }

    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator*(Point a, double s) { return a *= s; }
    friend Point operator*(double s, Point a) { return a *= s; }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.dim_ != b.dim_) return false;
        for (int i = 0; i < a.dim_; ++i)
            if (a.coords_[i] != b.coords_[i]) return false;
        return true;
    }

    /// Lexicographic order; used wherever a deterministic point ordering is needed.
    friend bool lex_less(const Point& a, const Point& b) {
        for (int i = 0; i < a.dim_; ++i) {
            if (a.coords_[i] < b.coords_[i]) return true;
            if (a.coords_[i] > b.coords_[i]) return false;
        }
        return false;
    }

  private:
    std::array<double, kMaxDim> coords_{};
    int dim_ = 0;
};

inline double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline double squared_norm(const Point& a) { return dot(a, a); }
inline double norm(const Point& a) { return std::sqrt(squared_norm(a)); }

inline double squared_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double distance(const Point& a, const Point& b) {
    return std::sqrt(squared_distance(a, b));
}

/// Axis-aligned box, min corner <= max corner componentwise.
struct Box {
    Point lo;
    Point hi;

    Box() = default;
    Box(Point lo_, Point hi_) : lo(lo_), hi(hi_) {
        if (lo.dim() != hi.dim()) throw Error("box corner dimensions differ");
        for (int i = 0; i < lo.dim(); ++i)
            if (!(lo[i] <= hi[i])) throw Error("box min corner exceeds max corner");
    }

    int dim() const { return lo.dim(); }

    double volume() const {
        double v = 1.0;
        for (int i = 0; i < dim(); ++i) v *= hi[i] - lo[i];
        return v;
    }

    bool degenerate() const {
        for (int i = 0; i < dim(); ++i)
            if (hi[i] <= lo[i]) return true;
        return false;
    }

    bool contains(const Point& p) const {
        for (int i = 0; i < dim(); ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        return true;
    }

    Point clamp(const Point& p) const {
        Point q = p;
        for (int i = 0; i < dim(); ++i) {
            if (q[i] < lo[i]) q[i] = lo[i];
            if (q[i] > hi[i]) q[i] = hi[i];
        }
        return q;
    }

    /// Main diagonal length.
    double diameter() const { return distance(lo, hi); }

    Box inflated(double margin) const {
        Box b = *this;
        for (int i = 0; i < dim(); ++i) {
            b.lo[i] -= margin;
            b.hi[i] += margin;
        }
        return b;
    }

    void expand_to(const Point& p) {
        for (int i = 0; i < dim(); ++i) {
            if (p[i] < lo[i]) lo[i] = p[i];
            if (p[i] > hi[i]) hi[i] = p[i];
        }
    }
};

}  // namespace geo
