#include "geo/stability.hpp"

#include <algorithm>
#include <cmath>

#include "geo/distance.hpp"
#include "geo/measure.hpp"
#include "geo/nn_index.hpp"
#include "geo/parallel.hpp"
#include "geo/rng.hpp"

namespace geo {

McEstimate l1_projection_distance(const CompactShape& a, const CompactShape& b, const Box& region,
                                  std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw Error("sample count must be >= 1");
    if (region.degenerate()) throw Error("degenerate box: zero volume");

    struct ChunkAcc {
        double sum = 0.0, sum_sq = 0.0;
        std::size_t accepted = 0, ties = 0;
    };
    std::vector<ChunkAcc> acc(kWorkChunks);
    parallel_chunks(n_samples, [&](std::size_t c, std::size_t begin, std::size_t end) {
        ChunkAcc& ch = acc[c];
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng(derive_stream_seed(seed, i));
            const Point x = rng.uniform_in(region);
            ProjectionSet pa, pb;
            try {
                pa = projection_set(a, x);
                pb = projection_set(b, x);
            } catch (const Error&) {
                ++ch.ties;
                continue;
            }
            if (!pa.unique() || !pb.unique()) {
                ++ch.ties;
                continue;
            }
            const double d = geo::distance(pa.projections.front(), pb.projections.front());
            ch.sum += d;
            ch.sum_sq += d * d;
            ++ch.accepted;
        }
    });

    double sum = 0.0, sum_sq = 0.0;
    McEstimate out;
    for (const ChunkAcc& ch : acc) {
        sum += ch.sum;
        sum_sq += ch.sum_sq;
        out.accepted += ch.accepted;
        out.ties_discarded += ch.ties;
    }
    if (out.accepted == 0) throw Error("no samples accepted in region");

    const double n = static_cast<double>(out.accepted);
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    out.value = region.volume() * mean;
    out.stderr_ = region.volume() * std::sqrt(var / n);
    return out;
}

DeltaLResult delta_L_measure(const CompactShape& a, const CompactShape& b, double L,
                             const Box& region, std::size_t n_samples, std::uint64_t seed) {
    if (!(L > 0.0)) throw Error("L must be positive");
    if (n_samples < 1) throw Error("sample count must be >= 1");
    if (region.degenerate()) throw Error("degenerate box: zero volume");

    struct ChunkAcc {
        std::vector<Point> witnesses;
        std::size_t accepted = 0, ties = 0;
    };
    std::vector<ChunkAcc> acc(kWorkChunks);
    parallel_chunks(n_samples, [&](std::size_t c, std::size_t begin, std::size_t end) {
        ChunkAcc& ch = acc[c];
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng(derive_stream_seed(seed, i));
            const Point x = rng.uniform_in(region);
            ProjectionSet pa, pb;
            try {
                pa = projection_set(a, x);
                pb = projection_set(b, x);
            } catch (const Error&) {
                ++ch.ties;
                continue;
            }
            if (!pa.unique() || !pb.unique()) {
                ++ch.ties;
                continue;
            }
            ++ch.accepted;
            if (geo::distance(pa.projections.front(), pb.projections.front()) >= L)
                ch.witnesses.push_back(x);
        }
    });

    DeltaLResult out;
    std::size_t accepted = 0, hits = 0, ties = 0;
    for (const ChunkAcc& ch : acc) {
        accepted += ch.accepted;
        ties += ch.ties;
        hits += ch.witnesses.size();
        out.witnesses.insert(out.witnesses.end(), ch.witnesses.begin(), ch.witnesses.end());
    }
    if (accepted == 0) throw Error("no samples accepted in region");

    const double n = static_cast<double>(accepted);
    const double p = static_cast<double>(hits) / n;
    out.measure.value = region.volume() * p;
    out.measure.stderr_ = region.volume() * std::sqrt(std::max(0.0, p * (1.0 - p)) / n);
    out.measure.accepted = accepted;
    out.measure.ties_discarded = ties;
    out.tie_fraction = static_cast<double>(ties) / static_cast<double>(n_samples);
    return out;
}

double net_resolution(const std::vector<Point>& points) {
    if (points.size() < 2) return kInfinity;
    NNIndex index((PointCloud(points)));
    std::vector<double> gaps;
    gaps.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto two = index.k_nearest(points[i], 2);
        const std::size_t other = two[0] == i ? two[1] : two[0];
        gaps.push_back(distance(points[i], points[other]));
    }
    std::sort(gaps.begin(), gaps.end());
    const std::size_t idx = std::min(gaps.size() - 1,
                                     static_cast<std::size_t>(0.95 * static_cast<double>(gaps.size())));
    return 2.0 * gaps[idx];
}

namespace {

double min_distance_to(const std::vector<Point>& set, const Point& x) {
    double best = kInfinity;
    for (const Point& p : set) best = std::min(best, squared_distance(p, x));
    return std::sqrt(best);
}

}  // namespace

InclusionCheck check_delta_inclusion(const CompactShape& a, const CompactShape& b, double L,
                                     double R, const std::vector<Point>& witnesses,
                                     std::size_t medial_budget, std::uint64_t seed) {
    if (!(L > 0.0) || !(R > 0.0)) throw Error("L and R must be positive");
    InclusionCheck out;
    out.delta = hausdorff(a, b);
    if (out.delta > 0.5 * L) throw Error("hypothesis violated: need hausdorff distance <= L/2");

    const double ratio = (L - out.delta) / (4.0 * R);
    out.mu_lemma = 1.0 / std::sqrt(1.0 + ratio * ratio) + 4.0 * std::sqrt(out.delta / L);
    out.mu_exceeds_one = out.mu_lemma >= 1.0;
    out.mu_used = out.mu_exceeds_one ? 0.99 : out.mu_lemma;
    out.tolerance = 2.0 * std::sqrt(R * out.delta);

    // Medial points relevant to the witnesses sit at least this far from K.
    const double diam = bounding_diameter(a);
    const double eps = std::max(1e-6 * (1.0 + diam),
                                0.5 * std::max(0.0, 0.5 * L - out.delta - out.tolerance));
    const MedialSample med = sample_mu_medial(a, out.mu_used, eps, medial_budget, seed);
    out.medial_samples = med.points.size();
    std::vector<Point> med_pts;
    med_pts.reserve(med.points.size());
    for (const MedialPoint& mp : med.points) med_pts.push_back(mp.m);
    out.resolution = net_resolution(med_pts);

    for (const Point& x : witnesses) {
        if (distance(a, x) > R) continue;
        ++out.checked;
        if (med_pts.empty() || min_distance_to(med_pts, x) > out.tolerance + out.resolution)
            ++out.violations;
    }
    return out;
}

CriticalStabilityCheck check_critical_stability(const CompactShape& a, const CompactShape& b,
                                                const std::vector<MedialPoint>& mu_points,
                                                std::size_t medial_budget, std::uint64_t seed) {
    CriticalStabilityCheck out;
    out.eps = hausdorff(a, b);

    const double diam = bounding_diameter(b);
    const MedialSample med = sample_mu_medial(b, 0.99, 1e-6 * (1.0 + diam), medial_budget, seed);
    out.medial_samples = med.points.size();
    std::vector<Point> med_pts;
    med_pts.reserve(med.points.size());
    for (const MedialPoint& mp : med.points) med_pts.push_back(mp.m);
    out.resolution = net_resolution(med_pts);
    out.mu_slack = out.resolution;

    for (const MedialPoint& x : mu_points) {
        ++out.checked;
        const double radius = 2.0 * std::sqrt(out.eps * x.dist) + out.resolution;
        const double mu_limit = x.mu + 2.0 * std::sqrt(out.eps / x.dist) + out.mu_slack;
        bool found = false;
        for (const MedialPoint& y : med.points) {
            if (y.mu > mu_limit) continue;
            if (geo::distance(y.m, x.m) <= radius) {
                found = true;
                break;
            }
        }
        if (!found) ++out.violations;
    }
    return out;
}

HolderCurve holder_experiment(const PointCloud& cloud, const Box& region,
                              const std::vector<double>& delta_list, std::size_t trials,
                              std::size_t n_samples, std::uint64_t seed) {
    if (trials < 1) throw Error("need at least one trial");
    for (std::size_t i = 1; i < delta_list.size(); ++i)
        if (!(delta_list[i] < delta_list[i - 1]))
            throw Error("delta list must be strictly decreasing");

    const int d = cloud.dim();
    const CompactShape base = CompactShape::cloud(cloud);

    // One sup-norm jitter pattern per trial, scaled across the delta sweep
    // so the curve is coupled in delta.
    std::vector<std::vector<Point>> patterns(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_stream_seed(seed, 500000 + t));
        patterns[t].reserve(cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            Point u(d);
            for (int k = 0; k < d; ++k) u[k] = rng.uniform(-1.0, 1.0);
            patterns[t].push_back(u);
        }
    }

    HolderCurve out;
    out.h_ref = 1.0 / (2.0 * (2.0 * d - 1.0));
    for (std::size_t j = 0; j < delta_list.size(); ++j) {
        const double delta = delta_list[j];
        double l1_sum = 0.0, se_sq_sum = 0.0, dh_sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            std::vector<Point> moved = cloud.points;
            for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += delta * patterns[t][i];
            const CompactShape perturbed = CompactShape::cloud(PointCloud(moved));
            dh_sum += hausdorff(base, perturbed);
            const McEstimate est = l1_projection_distance(base, perturbed, region, n_samples,
                                                          derive_stream_seed(seed, 900000 + t));
            l1_sum += est.value;
            se_sq_sum += est.stderr_ * est.stderr_;
        }
        HolderPoint pt;
        pt.delta_nominal = delta;
        pt.delta_exact = dh_sum / static_cast<double>(trials);
        pt.l1 = l1_sum / static_cast<double>(trials);
        pt.stderr_ = std::sqrt(se_sq_sum) / static_cast<double>(trials);
        out.points.push_back(pt);
    }

    // log-log slope on the exact Hausdorff distances
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const HolderPoint& p : out.points) {
        if (!(p.delta_exact > 0.0) || !(p.l1 > 0.0)) continue;
        const double lx = std::log(p.delta_exact), ly = std::log(p.l1);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n >= 2 && n * sxx - sx * sx != 0.0)
        out.h_emp = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    for (std::size_t j = 0; j + 1 < out.points.size(); ++j) {
        const HolderPoint& big = out.points[j];
        const HolderPoint& small = out.points[j + 1];
        if (small.l1 > big.l1 + 3.0 * (small.stderr_ + big.stderr_)) out.monotone = false;
    }
    return out;
}

}  // namespace geo
