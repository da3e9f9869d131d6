#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geo/measure.hpp"
#include "geo/rng.hpp"
#include "geo/shape.hpp"
#include "geo/stability.hpp"

using namespace geo;

namespace {

CompactShape jittered(const PointCloud& cloud, double amplitude, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point> moved = cloud.points;
    for (Point& p : moved)
        for (int k = 0; k < cloud.dim(); ++k) p[k] += rng.uniform(-amplitude, amplitude);
    return CompactShape::cloud(PointCloud(moved));
}

const Box kBox2(Point{-2.0, -2.0}, Point{2.0, 2.0});

}  // namespace

TEST_CASE("l1 projection distance: identical shapes, exact symmetry") {
    const CompactShape two = make_two_point_cloud(2);
    const McEstimate self = l1_projection_distance(two, two, kBox2, 5000, 1);
    CHECK(self.value == 0.0);

    const CompactShape other = jittered(two.as_cloud().cloud, 0.05, 7);
    const McEstimate ab = l1_projection_distance(two, other, kBox2, 20000, 2);
    const McEstimate ba = l1_projection_distance(other, two, kBox2, 20000, 2);
    CHECK(ab.value == ba.value);  // bitwise: shared stream, symmetric norm
    CHECK(ab.accepted == ba.accepted);
}

TEST_CASE("l1 projection distance: single-point translation closed form") {
    // every sample moves its projection by exactly eps, so l1 = vol(E) * eps
    const double eps = 0.125;
    const CompactShape a = CompactShape::cloud({Point{0.0, 0.0}});
    const CompactShape b = CompactShape::cloud({Point{eps, 0.0}});
    const Box e(Point{-1.0, -1.0}, Point{1.0, 1.0});
    const McEstimate est = l1_projection_distance(a, b, e, 4000, 3);
    CHECK(est.value == doctest::Approx(4.0 * eps).epsilon(1e-12));
    CHECK(est.stderr_ <= 1e-12);
}

TEST_CASE("l1 projection distance: translation in a medial-free window") {
    // to the right of both medial lines every projection moves by exactly t
    const CompactShape k = make_two_point_cloud(2);
    const CompactShape kt = CompactShape::cloud({Point{-0.9, 0.0}, Point{1.1, 0.0}});
    const Box window(Point{0.3, -1.0}, Point{1.7, 1.0});
    const McEstimate est = l1_projection_distance(k, kt, window, 4000, 5);
    CHECK(est.value == doctest::Approx(window.volume() * 0.1).epsilon(1e-9));
}

TEST_CASE("delta_L measure: identical shapes and oversized L vanish") {
    const CompactShape two = make_two_point_cloud(2);
    CHECK(delta_L_measure(two, two, 0.5, kBox2, 4000, 1).measure.value == 0.0);

    const CompactShape other = jittered(two.as_cloud().cloud, 0.01, 9);
    const DeltaLResult big_l = delta_L_measure(two, other, 10.0, kBox2, 4000, 1);
    CHECK(big_l.measure.value == 0.0);  // projections cannot disagree beyond the diameter
}

TEST_CASE("delta_L measure: witnesses verify and mass shrinks with L") {
    const CompactShape k = make_two_point_cloud(2);
    const CompactShape kp = jittered(k.as_cloud().cloud, 1e-2, 13);
    const DeltaLResult at_half = delta_L_measure(k, kp, 0.5, kBox2, 300000, 21);
    REQUIRE(at_half.witnesses.size() > 10);
    for (const Point& x : at_half.witnesses) {
        const Point pa = project(k, x);
        const Point pb = project(kp, x);
        CHECK(distance(pa, pb) >= 0.5);
    }
    // nested events on the same stream: monotone in L
    const DeltaLResult at_one = delta_L_measure(k, kp, 1.0, kBox2, 300000, 21);
    const DeltaLResult at_two = delta_L_measure(k, kp, 1.9, kBox2, 300000, 21);
    CHECK(at_one.measure.value <= at_half.measure.value);
    CHECK(at_two.measure.value <= at_one.measure.value);
    // witnesses concentrate near the unperturbed medial line x = 0
    for (const Point& x : at_half.witnesses) CHECK(std::abs(x[0]) <= 0.1);
}

TEST_CASE("delta inclusion check: identical shapes are vacuous") {
    const CompactShape two = make_two_point_cloud(2);
    const InclusionCheck chk = check_delta_inclusion(two, two, 0.5, 2.0, {}, 4000, 3);
    CHECK(chk.delta == 0.0);
    CHECK_FALSE(chk.mu_exceeds_one);
    CHECK(chk.checked == 0);
    CHECK(chk.violations == 0);
}

TEST_CASE("delta inclusion check: jittered two-point configuration") {
    const CompactShape k = make_two_point_cloud(2);
    const CompactShape kp = jittered(k.as_cloud().cloud, 1e-3, 17);
    const DeltaLResult dl = delta_L_measure(k, kp, 0.5, kBox2, 400000, 23);
    REQUIRE(dl.witnesses.size() >= 10);

    const InclusionCheck chk = check_delta_inclusion(k, kp, 0.5, 2.0, dl.witnesses, 30000, 29);
    CHECK(chk.delta <= 1.5e-3);
    CHECK(chk.mu_exceeds_one);  // the bound is vacuous at these parameters
    CHECK(chk.mu_used < 1.0);
    CHECK(chk.checked >= 10);
    CHECK(chk.violations == 0);
    CHECK(chk.resolution < chk.tolerance);  // net is fine enough to be meaningful

    // violations are nonincreasing as the medial net densifies
    const InclusionCheck coarse = check_delta_inclusion(k, kp, 0.5, 2.0, dl.witnesses, 7500, 29);
    CHECK(chk.violations <= coarse.violations);
}

TEST_CASE("delta inclusion check enforces the hausdorff hypothesis") {
    const CompactShape k = make_two_point_cloud(2);
    const CompactShape far = CompactShape::cloud({Point{-1.0, 0.6}, Point{1.0, 0.6}});
    CHECK_THROWS_AS(check_delta_inclusion(k, far, 0.5, 2.0, {}, 1000, 1), Error);
}

TEST_CASE("critical point stability: identical shapes") {
    const CompactShape two = make_two_point_cloud(2);
    const MedialSample pts = sample_mu_medial(two, 0.8, 0.2, 4000, 31);
    REQUIRE(pts.points.size() > 20);
    const CriticalStabilityCheck chk =
        check_critical_stability(two, two, pts.points, 40000, 37);
    CHECK(chk.eps == 0.0);
    CHECK(chk.checked == pts.points.size());
    CHECK(chk.violations == 0);
}

TEST_CASE("critical point stability: jittered cloud, violations shrink with density") {
    const CompactShape k = make_two_point_cloud(2);
    const CompactShape kp = jittered(k.as_cloud().cloud, 1e-3, 41);
    const MedialSample pts = sample_mu_medial(k, 0.8, 0.2, 3000, 43);
    REQUIRE(pts.points.size() > 20);

    const CriticalStabilityCheck dense = check_critical_stability(k, kp, pts.points, 60000, 47);
    CHECK(dense.eps <= 1.5e-3);
    CHECK(dense.violations == 0);

    const CriticalStabilityCheck coarse = check_critical_stability(k, kp, pts.points, 15000, 47);
    CHECK(dense.violations <= coarse.violations);
}

TEST_CASE("holder experiment: single point decays linearly") {
    const PointCloud point({Point{0.0, 0.0}});
    const Box e(Point{-1.0, -1.0}, Point{1.0, 1.0});
    const HolderCurve curve = holder_experiment(point, e, {0.1, 0.05, 0.025, 0.0125}, 3, 2000, 51);
    CHECK(curve.h_ref == doctest::Approx(1.0 / 6.0));
    CHECK(curve.h_emp == doctest::Approx(1.0).epsilon(0.05));
    CHECK(curve.monotone);
}

TEST_CASE("holder experiment: two-point cloud stays under the reference envelope") {
    const PointCloud two({Point{-1.0, 0.0}, Point{1.0, 0.0}});
    const HolderCurve curve =
        holder_experiment(two, kBox2, {0.1, 0.03, 0.01, 0.003}, 3, 30000, 53);
    REQUIRE(curve.points.size() == 4);
    CHECK(curve.monotone);
    CHECK(curve.h_emp >= curve.h_ref);
    // one-sided envelope fitted at the largest delta
    const double c0 = curve.points[0].l1 / std::pow(curve.points[0].delta_exact, curve.h_ref);
    for (const HolderPoint& p : curve.points)
        CHECK(p.l1 <= c0 * std::pow(p.delta_exact, curve.h_ref) + 3.0 * p.stderr_ + 1e-12);
}

TEST_CASE("projection distance vanishes along hausdorff-converging samples") {
    // denser and denser samples of a circle against a fine reference sample
    const CompactShape limit = CompactShape::cloud(make_circle_cloud(512));
    const Box e(Point{-1.5, -1.5}, Point{1.5, 1.5});
    double first = 0.0, last = kInfinity;
    for (int n : {16, 32, 64, 128}) {
        const CompactShape kn = CompactShape::cloud(make_circle_cloud(n));
        const McEstimate est = l1_projection_distance(kn, limit, e, 60000, 55);
        CHECK(est.value <= last + 3.0 * est.stderr_);
        if (n == 16) first = est.value;
        last = est.value;
    }
    // roughly linear decay in the sample spacing
    CHECK(last <= 0.25 * first);
}
