#include "geo/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "geo/distance.hpp"
#include "geo/parallel.hpp"
#include "geo/rng.hpp"

namespace geo {

double estimate_reach(const CompactShape& shape) {
    struct Visitor {
        double operator()(const CloudShape& c) const {
            const auto& pts = c.cloud.points;
            if (pts.size() == 1) return kInfinity;
            double min_gap_sq = kInfinity;
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i + 1; j < pts.size(); ++j) {
                    const double d = squared_distance(pts[i], pts[j]);
                    if (d > 0.0 && d < min_gap_sq) min_gap_sq = d;
                }
            if (is_infinite(min_gap_sq)) return kInfinity;  // all points coincide
            return 0.5 * std::sqrt(min_gap_sq);
        }
        double operator()(const BallShape&) const { return kInfinity; }
        double operator()(const BoxShape&) const { return kInfinity; }
        double operator()(const SegmentSet& s) const {
            if (s.segments.size() == 1) return kInfinity;
            double r = kInfinity;
            for (std::size_t i = 0; i < s.segments.size(); ++i)
                for (std::size_t j = i + 1; j < s.segments.size(); ++j) {
                    const CompactShape a = CompactShape::segments({s.segments[i]});
                    const CompactShape b = CompactShape::segments({s.segments[j]});
                    r = std::min(r, 0.5 * set_distance(a, b));
                }
            return r;
        }
        double operator()(const UnionShape& u) const {
            double r = kInfinity;
            for (const CompactShape& m : u.members) r = std::min(r, estimate_reach(m));
            for (std::size_t i = 0; i < u.members.size(); ++i)
                for (std::size_t j = i + 1; j < u.members.size(); ++j)
                    r = std::min(r, 0.5 * set_distance(u.members[i], u.members[j]));
            return r;
        }
    };
    return std::visit(Visitor{}, shape.value());
}

double unit_ball_volume(int k) {
    if (k < 0) throw Error("negative dimension");
    // omega_0 = 1, omega_1 = 2, omega_k = (2 pi / k) omega_{k-2}
    double even = 1.0, odd = 2.0;
    if (k == 0) return even;
    if (k == 1) return odd;
    for (int i = 2; i <= k; ++i) {
        const double next = 2.0 * M_PI / i * (i % 2 == 0 ? even : odd);
        if (i % 2 == 0)
            even = next;
        else
            odd = next;
    }
    return k % 2 == 0 ? even : odd;
}

std::size_t RegionScheme::count(const CompactShape& shape) const {
    switch (kind) {
        case Kind::Global:
            return 1;
        case Kind::CloudPoints:
            if (!shape.is_cloud()) throw Error("per-point regions require a cloud shape");
            return shape.as_cloud().cloud.size();
        case Kind::BoxStrata:
            if (!std::holds_alternative<BoxShape>(shape.value()))
                throw Error("strata regions require a box shape");
            return static_cast<std::size_t>(shape.dim()) + 1;
    }
    throw Error("unknown region scheme");
}

std::vector<std::string> RegionScheme::names(const CompactShape& shape) const {
    std::vector<std::string> out;
    switch (kind) {
        case Kind::Global:
            out.emplace_back("all");
            break;
        case Kind::CloudPoints:
            for (std::size_t i = 0; i < count(shape); ++i) out.push_back("p" + std::to_string(i));
            break;
        case Kind::BoxStrata: {
            // s0 = interior; s_k = points whose projection clamps k coords
            // (face, edge, vertex for d = 3).
            static const char* d3[] = {"interior", "face", "edge", "vertex"};
            for (std::size_t k = 0; k <= static_cast<std::size_t>(shape.dim()); ++k) {
                if (shape.dim() == 3)
                    out.emplace_back(d3[k]);
                else
                    out.push_back("s" + std::to_string(k));
            }
            break;
        }
    }
    return out;
}

std::size_t RegionScheme::label(const CompactShape& shape, const Point& x, const Point& p,
                                std::size_t nearest_index) const {
    switch (kind) {
        case Kind::Global:
            return 0;
        case Kind::CloudPoints:
            return nearest_index;
        case Kind::BoxStrata: {
            const Box& b = std::get<BoxShape>(shape.value()).box;
            int clamped = 0;
            for (int i = 0; i < b.dim(); ++i)
                if (x[i] < b.lo[i] || x[i] > b.hi[i]) ++clamped;
            (void)p;
            return static_cast<std::size_t>(clamped);
        }
    }
    throw Error("unknown region scheme");
}

std::vector<double> default_r_grid(const CompactShape& shape, std::size_t count) {
    const int d = shape.dim();
    if (count == 0) count = static_cast<std::size_t>(d) + 3;
    const double reach = estimate_reach(shape);
    std::vector<double> grid(count);
    if (is_infinite(reach)) {
        // No reach constraint: a wide, evenly spaced span keeps the
        // extrapolation to r = 0 well conditioned. Unit scale for shapes
        // with no extent of their own (a single point).
        const double diam = bounding_diameter(shape);
        const double scale = diam > 0.0 ? 0.5 * diam : 1.0;
        const double lo = 0.05 * scale, hi = 1.6 * scale;
        for (std::size_t k = 0; k < count; ++k)
            grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
        return grid;
    }
    const double lo = 0.2 * reach, hi = 0.8 * reach;
    for (std::size_t k = 0; k < count; ++k) {
        // Chebyshev nodes mapped to [lo, hi], in increasing order.
        const double c = std::cos(M_PI * (2.0 * (count - 1 - k) + 1.0) / (2.0 * count));
        grid[k] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * c;
    }
    return grid;
}

namespace {

// Weighted least squares via Householder QR; rows = observations scaled by
// 1/sigma_i, cols = monomials.
std::vector<double> polyfit(const std::vector<double>& r_grid, const std::vector<double>& y,
                            const std::vector<double>& sigma, int degree) {
    const std::size_t rows = r_grid.size();
    const std::size_t cols = static_cast<std::size_t>(degree) + 1;
    // Scale radii to O(1) for conditioning; unscale coefficients afterwards.
    const double s = *std::max_element(r_grid.begin(), r_grid.end());
    std::vector<double> a(rows * cols);
    std::vector<double> b = y;
    for (std::size_t i = 0; i < rows; ++i) {
        double pw = 1.0;
        for (std::size_t j = 0; j < cols; ++j) {
            a[i * cols + j] = pw / sigma[i];
            pw *= r_grid[i] / s;
        }
        b[i] /= sigma[i];
    }
    for (std::size_t j = 0; j < cols; ++j) {
        double norm_sq = 0.0;
        for (std::size_t i = j; i < rows; ++i) norm_sq += a[i * cols + j] * a[i * cols + j];
        double alpha = std::sqrt(norm_sq);
        if (a[j * cols + j] > 0.0) alpha = -alpha;
        if (alpha == 0.0) continue;
        std::vector<double> vvec(rows, 0.0);
        vvec[j] = a[j * cols + j] - alpha;
        for (std::size_t i = j + 1; i < rows; ++i) vvec[i] = a[i * cols + j];
        double vnorm_sq = 0.0;
        for (std::size_t i = j; i < rows; ++i) vnorm_sq += vvec[i] * vvec[i];
        if (vnorm_sq == 0.0) continue;
        for (std::size_t jj = j; jj < cols; ++jj) {
            double dot_va = 0.0;
            for (std::size_t i = j; i < rows; ++i) dot_va += vvec[i] * a[i * cols + jj];
            const double f = 2.0 * dot_va / vnorm_sq;
            for (std::size_t i = j; i < rows; ++i) a[i * cols + jj] -= f * vvec[i];
        }
        double dot_vb = 0.0;
        for (std::size_t i = j; i < rows; ++i) dot_vb += vvec[i] * b[i];
        const double f = 2.0 * dot_vb / vnorm_sq;
        for (std::size_t i = j; i < rows; ++i) b[i] -= f * vvec[i];
    }
    std::vector<double> coef(cols, 0.0);
    for (std::size_t j = cols; j-- > 0;) {
        double sum = b[j];
        for (std::size_t k = j + 1; k < cols; ++k) sum -= a[j * cols + k] * coef[k];
        coef[j] = a[j * cols + j] != 0.0 ? sum / a[j * cols + j] : 0.0;
    }
    double unscale = 1.0;
    for (std::size_t j = 0; j < cols; ++j) {
        coef[j] *= unscale;
        unscale /= s;
    }
    return coef;
}

}  // namespace

CurvatureFit steiner_fit(const CompactShape& shape, const RegionScheme& regions,
                         const std::vector<double>& r_grid, std::size_t n_samples,
                         std::uint64_t seed) {
    const int d = shape.dim();
    if (r_grid.size() < static_cast<std::size_t>(d) + 2)
        throw Error("r grid must have at least d+2 points");
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0)) throw Error("r grid must be positive");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1]))
            throw Error("r grid must be strictly increasing");
    }
    const double reach = estimate_reach(shape);
    if (r_grid.back() >= reach) throw Error("tube formula invalid beyond reach");
    if (n_samples < 1) throw Error("sample count must be >= 1");

    // One stratum per axis cell; the effective per-radius sample count is
    // strata^d (closest d-th power to the requested budget).
    const auto strata = static_cast<std::size_t>(
        std::llround(std::pow(static_cast<double>(n_samples), 1.0 / d)));
    std::size_t n_cells = 1;
    for (int i = 0; i < d; ++i) n_cells *= std::max<std::size_t>(strata, 1);

    const std::size_t n_regions = regions.count(shape);
    CurvatureFit fit;
    fit.region_names = regions.names(shape);
    fit.r_grid = r_grid;
    fit.reach_used = reach;
    fit.samples_per_r = n_cells;
    fit.seed = seed;
    fit.masses.assign(n_regions, std::vector<double>(r_grid.size(), 0.0));

    const bool cloud_mode = shape.is_cloud();
    const double half_diam = 0.5 * bounding_diameter(shape);
    std::vector<double> sigma(r_grid.size());

    for (std::size_t k = 0; k < r_grid.size(); ++k) {
        const double r = r_grid[k];
        const Box box = shape.bounding_box().inflated(r);
        const std::uint64_t pass_seed = derive_stream_seed(seed, 1000 + k);
        std::vector<std::vector<std::size_t>> chunk_counts(kWorkChunks);
        std::vector<std::size_t> chunk_inside(kWorkChunks, 0);
        parallel_chunks(n_cells, [&](std::size_t c, std::size_t begin, std::size_t end) {
            chunk_counts[c].assign(n_regions, 0);
            for (std::size_t cell = begin; cell < end; ++cell) {
                Rng rng(derive_stream_seed(pass_seed, cell));
                // jittered point of this grid cell
                Point x(d);
                std::size_t rest = cell;
                for (int i = 0; i < d; ++i) {
                    const std::size_t gi = rest % strata;
                    rest /= strata;
                    const double w = (box.hi[i] - box.lo[i]) / static_cast<double>(strata);
                    x[i] = box.lo[i] + (static_cast<double>(gi) + rng.next_double()) * w;
                }
                if (distance(shape, x) > r) continue;
                ++chunk_inside[c];
                try {
                    const ProjectionSet ps = projection_set(shape, x);
                    if (!ps.unique()) continue;
                    const std::size_t nearest =
                        cloud_mode ? shape.as_cloud().index->nearest(x) : 0;
                    chunk_counts[c][regions.label(shape, x, ps.projections.front(), nearest)] += 1;
                } catch (const Error&) {
                    // tie: discarded
                }
            }
        });
        std::vector<std::size_t> counts(n_regions, 0);
        std::size_t n_inside = 0;
        for (std::size_t c = 0; c < kWorkChunks; ++c) {
            n_inside += chunk_inside[c];
            for (std::size_t reg = 0; reg < chunk_counts[c].size(); ++reg)
                counts[reg] += chunk_counts[c][reg];
        }
        if (n_inside < n_cells / 1000 + 1)
            throw Error("E/bounding box mismatch: acceptance rate below 1e-3");
        const double w = box.volume() / static_cast<double>(n_cells);
        for (std::size_t reg = 0; reg < n_regions; ++reg)
            fit.masses[reg][k] = w * static_cast<double>(counts[reg]);

        // Stratified-noise proxy for the fit weights: boundary cells only,
        // sigma ~ cell^((d+1)/2) * sqrt(offset surface area).
        const double cell_w = (box.hi[0] - box.lo[0]) / static_cast<double>(strata);
        sigma[k] = std::pow(cell_w, 0.5 * (d + 1)) * std::pow(half_diam + r, 0.5 * (d - 1));
    }

    for (std::size_t reg = 0; reg < n_regions; ++reg) {
        std::vector<double> c = polyfit(r_grid, fit.masses[reg], sigma, d);
        double rss = 0.0;
        for (std::size_t k = 0; k < r_grid.size(); ++k) {
            double pred = 0.0, pw = 1.0;
            for (double ci : c) {
                pred += ci * pw;
                pw *= r_grid[k];
            }
            const double e = pred - fit.masses[reg][k];
            rss += e * e;
        }
        fit.residual_rms.push_back(std::sqrt(rss / static_cast<double>(r_grid.size())));
        std::vector<double> phi(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) phi[i] = c[i] / unit_ball_volume(d - static_cast<int>(i));
        fit.phi.push_back(std::move(phi));
        fit.coeffs.push_back(std::move(c));
    }
    return fit;
}

std::array<double, 4> cube_oracle(double r) {
    if (!(r > 0.0)) throw Error("offset radius must be positive");
    // Unit cube in R^3: 6 faces of area 1, 12 edges carrying quarter
    // cylinders, 8 vertices carrying octant balls.
    return {1.0, 6.0 * r, 3.0 * M_PI * r * r, (4.0 / 3.0) * M_PI * r * r * r};
}

}  // namespace geo
