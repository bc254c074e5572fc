#include "morphtop/mean_value.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace mtop;
using mtest::TestRng;

namespace {

std::vector<Vec2> regular_hexagon(double a = 1.0) {
    std::vector<Vec2> poly;
    for (int k = 0; k < 6; ++k) {
        const double ang = M_PI * k / 3.0;
        poly.emplace_back(a * std::cos(ang), a * std::sin(ang));
    }
    return poly;
}

// Random simple hexagon, concave with probability ~1: one vertex pulled
// toward the centroid.
std::vector<Vec2> random_concave_hexagon(TestRng& rng) {
    std::vector<Vec2> poly;
    for (int k = 0; k < 6; ++k) {
        const double ang = M_PI * k / 3.0 + rng.uniform(-0.15, 0.15);
        const double rad = rng.uniform(0.8, 1.2);
        poly.emplace_back(rad * std::cos(ang), rad * std::sin(ang));
    }
    const Vec2 c = polygon_centroid(poly);
    poly[2] = c + 0.25 * (poly[2] - c);  // reflex vertex
    return poly;
}

double polygon_diameter(const std::vector<Vec2>& poly) {
    double d = 0.0;
    for (const Vec2& a : poly) {
        for (const Vec2& b : poly) d = std::max(d, (a - b).norm());
    }
    return d;
}

Vec2 random_interior_point(const std::vector<Vec2>& poly, TestRng& rng) {
    Vec2 lo = poly[0], hi = poly[0];
    for (const Vec2& p : poly) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double diam = polygon_diameter(poly);
    for (;;) {
        const Vec2 p(rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()));
        if (!point_in_polygon(p, poly, 0.0)) continue;
        double min_edge = 1e300;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            min_edge = std::min(min_edge, point_segment_distance(p, poly[i],
                                                                 poly[(i + 1) % poly.size()]));
        }
        if (min_edge > 1e-3 * diam) return p;
    }
}

}  // namespace

TEST_CASE("regular hexagon centroid gives equal weights") {
    const auto poly = regular_hexagon();
    const auto eval = mean_value_shape(poly, Vec2(0, 0));
    for (int i = 0; i < 6; ++i) {
        CHECK(eval.values[i] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    }
}

TEST_CASE("vertex limit: N_i -> 1 near vertex i") {
    const auto poly = regular_hexagon();
    const double diam = polygon_diameter(poly);
    const Vec2 c = polygon_centroid(poly);
    for (int i = 0; i < 6; ++i) {
        const Vec2 inward = (c - poly[i]).normalized();
        const Vec2 p = poly[i] + 1e-8 * diam * inward;
        const auto eval = mean_value_shape(poly, p);
        for (int j = 0; j < 6; ++j) {
            CHECK(std::abs(eval.values[j] - (i == j ? 1.0 : 0.0)) <= 1e-6);
        }
    }
}

TEST_CASE("partition of unity and linear precision on concave hexagons") {
    TestRng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto poly = random_concave_hexagon(rng);
        REQUIRE(polygon_signed_area(poly) > 0.0);
        for (int k = 0; k < 25; ++k) {
            const Vec2 p = random_interior_point(poly, rng);
            const auto eval = mean_value_shape(poly, p);
            CHECK(std::abs(eval.values.sum() - 1.0) <= 1e-12);
            Vec2 interp = Vec2::Zero();
            for (int i = 0; i < 6; ++i) interp += eval.values[i] * poly[i];
            CHECK((interp - p).norm() <= 1e-12);
        }
    }
}

TEST_CASE("gradients match central finite differences") {
    TestRng rng(9);
    for (int trial = 0; trial < 15; ++trial) {
        const auto poly = random_concave_hexagon(rng);
        const double diam = polygon_diameter(poly);
        const double h = 1e-7 * diam;
        for (int k = 0; k < 6; ++k) {
            const Vec2 p = random_interior_point(poly, rng);
            const auto eval = mean_value_shape(poly, p);
            double max_grad = 0.0;
            for (int i = 0; i < 6; ++i) max_grad = std::max(max_grad, eval.grad.row(i).norm());
            for (int c = 0; c < 2; ++c) {
                Vec2 dp = Vec2::Zero();
                dp[c] = h;
                const auto plus = mean_value_shape(poly, p + dp);
                const auto minus = mean_value_shape(poly, p - dp);
                for (int i = 0; i < 6; ++i) {
                    const double fd = (plus.values[i] - minus.values[i]) / (2.0 * h);
                    CHECK(std::abs(eval.grad(i, c) - fd) <= 1e-6 * std::max(1.0, max_grad));
                }
            }
        }
    }
}

TEST_CASE("boundary evaluation is rejected") {
    const auto poly = regular_hexagon();
    CHECK_THROWS_AS(mean_value_shape(poly, poly[0]), BoundaryPointError);
    CHECK_THROWS_AS(mean_value_shape(poly, 0.5 * (poly[0] + poly[1])), BoundaryPointError);
}
