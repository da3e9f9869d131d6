#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geo/curvature.hpp"
#include "geo/distance.hpp"
#include "geo/measure.hpp"
#include "geo/rng.hpp"
#include "geo/shape.hpp"

using namespace geo;

TEST_CASE("reach estimates") {
    CHECK(estimate_reach(CompactShape::cloud({Point{0.0, 0.0}, Point{1.0, 0.0}})) ==
          doctest::Approx(0.5));
    CHECK(is_infinite(estimate_reach(CompactShape::ball(Point{0.0, 0.0}, 2.0))));
    CHECK(is_infinite(estimate_reach(CompactShape::cloud({Point{3.0, 3.0}}))));
    // minimal gap dominates: {0, 1, 10} on a line
    CHECK(estimate_reach(CompactShape::cloud(
              {Point{0.0, 0.0}, Point{1.0, 0.0}, Point{10.0, 0.0}})) == doctest::Approx(0.5));
    // union of two balls: half the separation
    const auto u = CompactShape::union_of({CompactShape::ball(Point{0.0, 0.0}, 1.0),
                                           CompactShape::ball(Point{5.0, 0.0}, 1.0)});
    CHECK(estimate_reach(u) == doctest::Approx(1.5));
}

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
}

TEST_CASE("cube oracle strata") {
    const auto at_one = cube_oracle(1.0);
    CHECK(at_one[0] == doctest::Approx(1.0));
    CHECK(at_one[1] == doctest::Approx(6.0));
    CHECK(at_one[2] == doctest::Approx(3.0 * M_PI));
    CHECK(at_one[3] == doctest::Approx(4.0 * M_PI / 3.0));

    const auto small = cube_oracle(1e-9);
    CHECK(small[0] == doctest::Approx(1.0));
    CHECK(small[1] <= 1e-8);
    CHECK(small[2] <= 1e-8);
    CHECK(small[3] <= 1e-8);

    CHECK_THROWS_AS(cube_oracle(0.0), Error);
    CHECK_THROWS_AS(cube_oracle(-0.5), Error);
}

TEST_CASE("cube oracle total matches a Monte Carlo volume") {
    const double r = 0.37;
    const auto strata = cube_oracle(r);
    const double total = strata[0] + strata[1] + strata[2] + strata[3];
    // plain rejection volume of the offset region
    const CompactShape cube = CompactShape::box(Point{0, 0, 0}, Point{1, 1, 1});
    const Box box = cube.bounding_box().inflated(r);
    Rng rng(31415);
    const std::size_t n = 400000;
    std::size_t inside = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (distance(cube, rng.uniform_in(box)) <= r) ++inside;
    const double p = static_cast<double>(inside) / n;
    const double mc = box.volume() * p;
    const double sigma = box.volume() * std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(mc - total) <= 3.0 * sigma);
}

TEST_CASE("steiner fit: point in the plane recovers the disk polynomial") {
    // K = single point in R^2: mass(r) = pi r^2, so c = (0, 0, pi)
    const CompactShape point = CompactShape::cloud({Point{0.0, 0.0}});
    RegionScheme global{RegionScheme::Kind::Global};
    const CurvatureFit fit = steiner_fit(point, global, default_r_grid(point), 250000, 71);
    REQUIRE(fit.coeffs.size() == 1);
    CHECK(std::abs(fit.coeffs[0][0]) <= 0.02 * M_PI);
    CHECK(std::abs(fit.coeffs[0][1]) <= 0.02 * M_PI);
    CHECK(fit.coeffs[0][2] == doctest::Approx(M_PI).epsilon(0.02));
    // phi normalization divides by unit ball volumes (omega_0 = 1 here)
    CHECK(fit.phi[0][2] == doctest::Approx(fit.coeffs[0][2]).epsilon(1e-12));
}

TEST_CASE("steiner fit: unit ball in R^3 tube polynomial") {
    const CompactShape ball = CompactShape::ball(Point{0.0, 0.0, 0.0}, 1.0);
    RegionScheme global{RegionScheme::Kind::Global};
    const CurvatureFit fit = steiner_fit(ball, global, default_r_grid(ball), 200000, 5);
    const double target[4] = {4 * M_PI / 3, 4 * M_PI, 4 * M_PI, 4 * M_PI / 3};
    for (int i = 0; i < 4; ++i)
        CHECK(fit.coeffs[0][i] == doctest::Approx(target[i]).epsilon(0.04));
}

TEST_CASE("steiner fit: unit cube in R^3, global mass polynomial") {
    // vol(cube^r) = 1 + 6r + 3 pi r^2 + (4/3) pi r^3
    const CompactShape cube = CompactShape::box(Point{0, 0, 0}, Point{1, 1, 1});
    RegionScheme global{RegionScheme::Kind::Global};
    const CurvatureFit fit = steiner_fit(cube, global, default_r_grid(cube), 600000, 77);
    const double target[4] = {1.0, 6.0, 3.0 * M_PI, 4.0 * M_PI / 3.0};
    for (int i = 0; i < 4; ++i)
        CHECK(fit.coeffs[0][i] == doctest::Approx(target[i]).epsilon(0.02));
}

TEST_CASE("steiner fit is reproducible bit for bit") {
    const CompactShape ball = CompactShape::ball(Point{0.0, 0.0, 0.0}, 1.0);
    RegionScheme global{RegionScheme::Kind::Global};
    const auto grid = default_r_grid(ball);
    const CurvatureFit a = steiner_fit(ball, global, grid, 50000, 99);
    const CurvatureFit b = steiner_fit(ball, global, grid, 50000, 99);
    REQUIRE(a.coeffs.size() == b.coeffs.size());
    for (std::size_t i = 0; i < a.coeffs[0].size(); ++i) CHECK(a.coeffs[0][i] == b.coeffs[0][i]);
}

TEST_CASE("steiner fit refuses radii beyond the reach") {
    const CompactShape two = make_two_point_cloud(2);  // reach 1
    RegionScheme global{RegionScheme::Kind::Global};
    CHECK_THROWS_WITH_AS(steiner_fit(two, global, {0.2, 0.4, 0.6, 0.8, 1.2}, 1000, 1),
                         "tube formula invalid beyond reach", Error);
}

TEST_CASE("steiner fit validates the grid shape") {
    const CompactShape ball = CompactShape::ball(Point{0.0, 0.0, 0.0}, 1.0);
    RegionScheme global{RegionScheme::Kind::Global};
    CHECK_THROWS_AS(steiner_fit(ball, global, {0.1, 0.2}, 1000, 1), Error);      // too few
    CHECK_THROWS_AS(steiner_fit(ball, global, {0.3, 0.2, 0.4, 0.5, 0.6, 0.7}, 1000, 1),
                    Error);  // not increasing
}

TEST_CASE("held-out radii are predicted within Monte Carlo noise") {
    const CompactShape ball = CompactShape::ball(Point{0.0, 0.0, 0.0}, 1.0);
    RegionScheme global{RegionScheme::Kind::Global};
    const CurvatureFit fit = steiner_fit(ball, global, default_r_grid(ball), 300000, 12);
    for (double r : {0.3, 0.9}) {
        double pred = 0.0, pw = 1.0;
        for (double c : fit.coeffs[0]) {
            pred += c * pw;
            pw *= r;
        }
        // independent plain-MC estimate with its own standard error
        const DiscreteMeasure m =
            boundary_measure(ball, Region::offset_region(r), 200000, 555);
        const Box box = ball.bounding_box().inflated(r);
        const double p = m.total() / box.volume();
        const double sigma = box.volume() * std::sqrt(p * (1 - p) / 200000.0);
        CHECK(std::abs(pred - m.total()) <= 3.0 * sigma + 1e-9);
    }
}

TEST_CASE("per-stratum cube fit matches the oracle stratum by stratum") {
    const CompactShape cube = CompactShape::box(Point{0, 0, 0}, Point{1, 1, 1});
    RegionScheme strata{RegionScheme::Kind::BoxStrata};
    const CurvatureFit fit = steiner_fit(cube, strata, default_r_grid(cube), 250000, 2);
    REQUIRE(fit.region_names.size() == 4);
    CHECK(fit.region_names[0] == "interior");
    CHECK(fit.region_names[3] == "vertex");
    // interior: constant 1; face: linear 6; edge: quadratic 3pi; vertex: cubic 4pi/3
    CHECK(fit.coeffs[0][0] == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.coeffs[1][1] == doctest::Approx(6.0).epsilon(0.05));
    CHECK(fit.coeffs[2][2] == doctest::Approx(3.0 * M_PI).epsilon(0.05));
    CHECK(fit.coeffs[3][3] == doctest::Approx(4.0 * M_PI / 3.0).epsilon(0.05));
}

TEST_CASE("per-point regions on a cloud partition the mass") {
    const CompactShape two = make_two_point_cloud(2);
    RegionScheme per_point{RegionScheme::Kind::CloudPoints};
    const auto grid = default_r_grid(two);
    const CurvatureFit fit = steiner_fit(two, per_point, grid, 100000, 8);
    REQUIRE(fit.masses.size() == 2);
    // symmetric halves at every radius
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double a = fit.masses[0][k], b = fit.masses[1][k];
        CHECK(std::abs(a - b) <= 0.05 * (a + b));
    }
}
