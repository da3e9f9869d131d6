#include "geo/measure.hpp"

#include <algorithm>
#include <cmath>

#include "geo/distance.hpp"
#include "geo/parallel.hpp"
#include "geo/rng.hpp"

namespace geo {

DiscreteMeasure DiscreteMeasure::normalized() const {
    const double t = total();
    if (!(t > 0.0)) throw Error("cannot normalize a zero measure");
    DiscreteMeasure out;
    out.atoms = atoms;
    out.masses.reserve(masses.size());
    for (double m : masses) out.masses.push_back(m / t);
    return out;
}

void DiscreteMeasure::validate() const {
    if (atoms.size() != masses.size()) throw Error("measure atom/mass length mismatch");
    for (double m : masses)
        if (!(m >= 0.0) || !std::isfinite(m)) throw Error("measure mass must be finite and >= 0");
}

DiscreteMeasure boundary_measure(const CompactShape& shape, const Region& region,
                                 std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw Error("sample count must be >= 1");

    Box box;
    bool offset_mode = region.kind == Region::Kind::Offset;
    double offset_r = region.offset;
    if (offset_mode) {
        if (!(offset_r > 0.0)) throw Error("offset radius must be positive");
        box = shape.bounding_box().inflated(offset_r);
    } else {
        box = region.box;
        if (box.degenerate()) throw Error("degenerate box: zero volume");
    }

    const bool cloud_mode = shape.is_cloud();
    const std::size_t n_cloud = cloud_mode ? shape.as_cloud().cloud.size() : 0;

    struct ChunkAcc {
        std::vector<double> cloud_mass;
        std::vector<Point> atoms;
        std::size_t inside = 0;
        std::size_t accepted = 0;
    };
    std::vector<ChunkAcc> acc(kWorkChunks);
    parallel_chunks(n_samples, [&](std::size_t c, std::size_t begin, std::size_t end) {
        ChunkAcc& a = acc[c];
        if (cloud_mode) a.cloud_mass.assign(n_cloud, 0.0);
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng(derive_stream_seed(seed, i));
            const Point x = rng.uniform_in(box);
            if (offset_mode && distance(shape, x) > offset_r) continue;
            ++a.inside;
            try {
                if (cloud_mode) {
                    const ProjectionSet ps = projection_set(shape, x);
                    if (!ps.unique()) continue;
                    a.cloud_mass[shape.as_cloud().index->nearest(x)] += 1.0;
                } else {
                    a.atoms.push_back(project(shape, x));
                }
                ++a.accepted;
            } catch (const Error&) {
                // tie: discarded (zero measure almost surely)
            }
        }
    });

    std::vector<double> cloud_mass(cloud_mode ? n_cloud : 0, 0.0);
    std::vector<Point> atoms;
    std::size_t n_inside = 0;
    std::size_t n_accepted = 0;
    for (const ChunkAcc& a : acc) {
        n_inside += a.inside;
        n_accepted += a.accepted;
        for (std::size_t k = 0; k < a.cloud_mass.size(); ++k) cloud_mass[k] += a.cloud_mass[k];
        atoms.insert(atoms.end(), a.atoms.begin(), a.atoms.end());
    }

    if (offset_mode && n_inside < n_samples / 1000 + 1)
        throw Error("E/bounding box mismatch: acceptance rate below 1e-3");
    if (n_accepted == 0) throw Error("no samples accepted in region");

    // vol(E): exact for boxes, Monte Carlo estimate for offsets.
    const double vol = offset_mode
                           ? box.volume() * static_cast<double>(n_inside) / static_cast<double>(n_samples)
                           : box.volume();
    const double w = vol / static_cast<double>(n_accepted);

    DiscreteMeasure out;
    if (cloud_mode) {
        out.atoms = shape.as_cloud().cloud.points;
        out.masses.reserve(cloud_mass.size());
        for (double c : cloud_mass) out.masses.push_back(c * w);
    } else {
        out.atoms = std::move(atoms);
        out.masses.assign(out.atoms.size(), w);
    }
    return out;
}

namespace {

double directed_hausdorff(const PointCloud& a, const NNIndex& b_index) {
    double worst = 0.0;
    for (const Point& p : a.points) worst = std::max(worst, b_index.nearest_distance(p));
    return worst;
}

}  // namespace

double hausdorff(const PointCloud& a, const PointCloud& b) {
    if (a.points.empty() || b.points.empty()) throw Error("empty compact set");
    NNIndex ia(a), ib(b);
    return std::max(directed_hausdorff(a, ib), directed_hausdorff(b, ia));
}

double hausdorff(const CompactShape& a, const CompactShape& b) {
    if (!a.is_cloud() || !b.is_cloud()) throw Error("hausdorff requires point clouds");
    const PointCloud& ca = a.as_cloud().cloud;
    const PointCloud& cb = b.as_cloud().cloud;
    return std::max(directed_hausdorff(ca, *b.as_cloud().index),
                    directed_hausdorff(cb, *a.as_cloud().index));
}

CoupledMeasures coupled_boundary_measures(const CompactShape& a, const CompactShape& b,
                                          const Box& region, std::size_t n_samples,
                                          std::uint64_t seed) {
    if (n_samples < 1) throw Error("sample count must be >= 1");
    if (region.degenerate()) throw Error("degenerate box: zero volume");

    const bool a_cloud = a.is_cloud(), b_cloud = b.is_cloud();
    const std::size_t na = a_cloud ? a.as_cloud().cloud.size() : 0;
    const std::size_t nb = b_cloud ? b.as_cloud().cloud.size() : 0;

    struct ChunkAcc {
        std::vector<double> mass_a, mass_b;
        std::vector<Point> atoms_a, atoms_b;
        double sum = 0.0, sum_sq = 0.0;
        std::size_t accepted = 0;
    };
    std::vector<ChunkAcc> acc(kWorkChunks);
    parallel_chunks(n_samples, [&](std::size_t c, std::size_t begin, std::size_t end) {
        ChunkAcc& ch = acc[c];
        if (a_cloud) ch.mass_a.assign(na, 0.0);
        if (b_cloud) ch.mass_b.assign(nb, 0.0);
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng(derive_stream_seed(seed, i));
            const Point x = rng.uniform_in(region);
            ProjectionSet pa, pb;
            try {
                pa = projection_set(a, x);
                pb = projection_set(b, x);
            } catch (const Error&) {
                continue;
            }
            if (!pa.unique() || !pb.unique()) continue;
            const Point& qa = pa.projections.front();
            const Point& qb = pb.projections.front();
            if (a_cloud)
                ch.mass_a[a.as_cloud().index->nearest(x)] += 1.0;
            else
                ch.atoms_a.push_back(qa);
            if (b_cloud)
                ch.mass_b[b.as_cloud().index->nearest(x)] += 1.0;
            else
                ch.atoms_b.push_back(qb);
            const double d = geo::distance(qa, qb);
            ch.sum += d;
            ch.sum_sq += d * d;
            ++ch.accepted;
        }
    });

    std::vector<double> mass_a(na, 0.0), mass_b(nb, 0.0);
    std::vector<Point> atoms_a, atoms_b;
    double sum = 0.0, sum_sq = 0.0;
    std::size_t accepted = 0;
    for (const ChunkAcc& ch : acc) {
        sum += ch.sum;
        sum_sq += ch.sum_sq;
        accepted += ch.accepted;
        for (std::size_t k = 0; k < ch.mass_a.size(); ++k) mass_a[k] += ch.mass_a[k];
        for (std::size_t k = 0; k < ch.mass_b.size(); ++k) mass_b[k] += ch.mass_b[k];
        atoms_a.insert(atoms_a.end(), ch.atoms_a.begin(), ch.atoms_a.end());
        atoms_b.insert(atoms_b.end(), ch.atoms_b.begin(), ch.atoms_b.end());
    }
    if (accepted == 0) throw Error("no samples accepted in region");

    CoupledMeasures out;
    out.volume = region.volume();
    out.accepted = accepted;
    const double n = static_cast<double>(accepted);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    out.l1 = out.volume * mean;
    out.l1_stderr = out.volume * std::sqrt(var / n);

    const double w = out.volume / n;
    if (a_cloud) {
        out.mu.atoms = a.as_cloud().cloud.points;
        for (double c : mass_a) out.mu.masses.push_back(c * w);
    } else {
        out.mu.atoms = std::move(atoms_a);
        out.mu.masses.assign(out.mu.atoms.size(), w);
    }
    if (b_cloud) {
        out.nu.atoms = b.as_cloud().cloud.points;
        for (double c : mass_b) out.nu.masses.push_back(c * w);
    } else {
        out.nu.atoms = std::move(atoms_b);
        out.nu.masses.assign(out.nu.atoms.size(), w);
    }
    return out;
}

}  // namespace geo
