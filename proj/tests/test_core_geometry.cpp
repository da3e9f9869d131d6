#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geo/nn_index.hpp"
#include "geo/rng.hpp"
#include "geo/scene.hpp"
#include "geo/shape.hpp"
#include "support/oracles.hpp"

using namespace geo;

namespace {

PointCloud random_cloud(int n, int dim, std::uint64_t seed, double extent = 1.0) {
    Rng rng(seed);
    std::vector<Point> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        Point p(dim);
        for (int k = 0; k < dim; ++k) p[k] = rng.uniform(-extent, extent);
        pts.push_back(p);
    }
    return PointCloud(std::move(pts));
}

}  // namespace

TEST_CASE("point arithmetic and box basics") {
    Point a{1.0, 2.0};
    Point b{-0.5, 4.0};
    CHECK((a + b)[0] == doctest::Approx(0.5));
    CHECK(dot(a, b) == doctest::Approx(7.5));
    CHECK(distance(a, b) == doctest::Approx(std::sqrt(1.5 * 1.5 + 4.0)));

    Box box({0.0, 0.0}, {2.0, 1.0});
    CHECK(box.volume() == doctest::Approx(2.0));
    CHECK(box.contains({1.0, 0.5}));
    CHECK_FALSE(box.contains({3.0, 0.5}));
    CHECK(box.clamp({3.0, -1.0}) == Point{2.0, 0.0});
    CHECK_THROWS_AS(Box({1.0, 0.0}, {0.0, 1.0}), Error);
}

TEST_CASE("scene config invariants") {
    SceneConfig ok;
    CHECK_NOTHROW(ok.validate());
    SceneConfig bad_dim;
    bad_dim.dim = 1;
    CHECK_THROWS_AS(bad_dim.validate(), Error);
    SceneConfig bad_budget;
    bad_budget.samples = 0;
    CHECK_THROWS_AS(bad_budget.validate(), Error);
    SceneConfig bad_tol;
    bad_tol.fit_tolerance = 0.0;
    CHECK_THROWS_AS(bad_tol.validate(), Error);
}

TEST_CASE("empty cloud is rejected") {
    CHECK_THROWS_WITH_AS(PointCloud(std::vector<Point>{}), "empty compact set", Error);
}

TEST_CASE("nearest neighbor: singleton and midpoint split") {
    NNIndex single(PointCloud({Point{1.0, 1.0}}));
    CHECK(single.nearest({-5.0, 3.0}) == 0);
    CHECK(single.nearest({100.0, -7.0}) == 0);

    NNIndex pair(PointCloud({Point{0.0, 0.0}, Point{1.0, 0.0}}));
    CHECK(pair.nearest({0.3, 0.0}) == 0);
    CHECK(pair.nearest({0.7, 0.0}) == 1);
    // exact midpoint: tie breaks to the lowest index
    CHECK(pair.nearest({0.5, 0.0}) == 0);
}

TEST_CASE("nearest neighbor matches brute force on random clouds") {
    for (int dim : {2, 3, 5}) {
        const PointCloud cloud = random_cloud(1000, dim, 42 + dim);
        NNIndex index(cloud);
        Rng rng(777);
        for (int q = 0; q < 100; ++q) {
            Point query(dim);
            for (int k = 0; k < dim; ++k) query[k] = rng.uniform(-1.5, 1.5);
            CHECK(index.nearest(query) == oracles::brute_nearest(cloud.points, query));
        }
    }
}

TEST_CASE("k-nearest and range queries match brute force, including duplicates") {
    // duplicated points force distance ties
    std::vector<Point> pts = random_cloud(400, 2, 7).points;
    for (int i = 0; i < 40; ++i) pts.push_back(pts[i]);
    const PointCloud cloud{pts};
    NNIndex index(cloud);
    Rng rng(3);
    for (int q = 0; q < 60; ++q) {
        Point query{rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)};
        CHECK(index.k_nearest(query, 5) == oracles::brute_k_nearest(pts, query, 5));
        const double radius = rng.uniform(0.0, 0.8);
        CHECK(index.range(query, radius) == oracles::brute_range(pts, query, radius));
    }
    // querying at a data point: inclusive range picks it up at radius 0
    CHECK(index.range(pts[5], 0.0).size() >= 1);
}

TEST_CASE("exhaustive nearest agreement on clouds up to 2000 points") {
    const PointCloud cloud = random_cloud(2000, 3, 99);
    NNIndex index(cloud);
    Rng rng(1234);
    for (int q = 0; q < 300; ++q) {
        Point query{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(index.nearest(query) == oracles::brute_nearest(cloud.points, query));
    }
}

TEST_CASE("bounding diameter: ball, cloud, box") {
    CHECK(bounding_diameter(CompactShape::ball(Point{0.0, 0.0}, 1.0)) == doctest::Approx(2.0));
    CHECK(bounding_diameter(make_two_point_cloud(2)) == doctest::Approx(2.0));
    CHECK(bounding_diameter(CompactShape::box(Point{0, 0, 0}, Point{1, 1, 1})) ==
          doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("diameter is permutation and rigid-motion invariant") {
    const PointCloud cloud = random_cloud(60, 2, 5);
    const double base = bounding_diameter(CompactShape::cloud(cloud));

    std::vector<Point> reversed(cloud.points.rbegin(), cloud.points.rend());
    CHECK(bounding_diameter(CompactShape::cloud(reversed)) == base);  // bitwise

    const double theta = 0.71;
    std::vector<Point> moved;
    for (const Point& p : cloud.points)
        moved.push_back({p[0] * std::cos(theta) - p[1] * std::sin(theta) + 3.5,
                         p[0] * std::sin(theta) + p[1] * std::cos(theta) - 1.25});
    CHECK(std::abs(bounding_diameter(CompactShape::cloud(moved)) - base) <= 1e-12);
}

TEST_CASE("diameter of unions uses exact cross suprema") {
    auto u = CompactShape::union_of({CompactShape::ball(Point{0.0, 0.0}, 1.0),
                                     CompactShape::ball(Point{4.0, 0.0}, 2.0)});
    CHECK(bounding_diameter(u) == doctest::Approx(7.0));  // centers 4 apart + radii
}

TEST_CASE("uniform sampling: determinism, degenerate boxes, CLT mean") {
    const Box box(Point{0.0, 0.0}, Point{1.0, 1.0});
    const auto a = sample_uniform(box, 5, 2024);
    const auto b = sample_uniform(box, 5, 2024);
    REQUIRE(a.size() == 5);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);  // bitwise

    const auto c = sample_uniform(box, 5, 2025);
    CHECK_FALSE(a[0] == c[0]);

    CHECK_THROWS_AS(sample_uniform(Box(Point{0.0, 0.0}, Point{0.0, 1.0}), 3, 1), Error);

    const auto big = sample_uniform(box, 100000, 7);
    double mx = 0.0, my = 0.0;
    for (const Point& p : big) {
        mx += p[0];
        my += p[1];
    }
    mx /= big.size();
    my /= big.size();
    CHECK(std::abs(mx - 0.5) < 0.01);
    CHECK(std::abs(my - 0.5) < 0.01);
}

TEST_CASE("derived streams differ and are stable") {
    CHECK(derive_stream_seed(1, 0) != derive_stream_seed(1, 1));
    CHECK(derive_stream_seed(1, 0) != derive_stream_seed(2, 0));
    CHECK(derive_stream_seed(42, 7) == derive_stream_seed(42, 7));
}

TEST_CASE("set distance between shapes") {
    const auto ball_a = CompactShape::ball(Point{0.0, 0.0}, 1.0);
    const auto ball_b = CompactShape::ball(Point{5.0, 0.0}, 1.0);
    CHECK(set_distance(ball_a, ball_b) == doctest::Approx(3.0));

    const auto box = CompactShape::box(Point{3.0, -1.0}, Point{4.0, 1.0});
    CHECK(set_distance(ball_a, box) == doctest::Approx(2.0));

    // a bimodal segment-to-segment-set instance: nearest pair is the far one
    const auto long_seg = CompactShape::segments({Segment{{0.0, 0.0}, {10.0, 0.0}}});
    const auto two_segs = CompactShape::segments(
        {Segment{{0.0, 5.0}, {1.0, 5.0}}, Segment{{9.0, 2.0}, {10.0, 2.0}}});
    CHECK(set_distance(long_seg, two_segs) == doctest::Approx(2.0).epsilon(1e-9));

    // overlapping shapes touch
    const auto near = CompactShape::ball(Point{1.5, 0.0}, 1.0);
    CHECK(set_distance(ball_a, near) == 0.0);
}

TEST_CASE("comb and circle factories") {
    const PointCloud comb = make_comb_cloud(8, 51);
    CHECK(comb.size() == 8 * 51);
    CHECK(comb.points.front()[1] == doctest::Approx(1.0));  // first tooth at 2^0
    const PointCloud circle = make_circle_cloud(64);
    CHECK(circle.size() == 64);
    for (const Point& p : circle.points) CHECK(norm(p) == doctest::Approx(1.0));
}
