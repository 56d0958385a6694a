#include <doctest.h>

#include <random>

#include "oscbem/geometry.hpp"

using namespace oscbem;

TEST_CASE("circle parametrization") {
    auto c = BoundaryCurve::circle(1.0);
    Vec2 p = c.point(0.0);
    CHECK(p.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(c.speed(0.37) == doctest::Approx(2 * pi).epsilon(1e-14));
    CHECK(c.perimeter() == doctest::Approx(2 * pi).epsilon(1e-14));
}

TEST_CASE("kite parametrization and speed") {
    auto c = BoundaryCurve::kite();
    Vec2 p = c.point(0.0);
    CHECK(p.x == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(1.0).epsilon(1e-15));
    // z'(0) = (-2 pi, 0) by direct differentiation
    CHECK(c.speed(0.0) == doctest::Approx(2 * pi).epsilon(1e-14));
}

TEST_CASE("pentagon sizing matches the reference side length") {
    // circumradius 2 cos(pi/5) gives side 2 sin(2 pi/5)
    double r = 2.0 * std::cos(pi / 5);
    auto c = BoundaryCurve::regular_polygon(5, r);
    Vec2 v0 = c.point(0.0);
    CHECK(v0.x == doctest::Approx(r).epsilon(1e-15));
    CHECK(v0.y == doctest::Approx(0.0).epsilon(1e-15));
    double side = (c.point(0.2) - c.point(0.0)).norm();
    CHECK(side == doctest::Approx(2.0 * std::sin(2 * pi / 5)).epsilon(1e-14));
    // constant-speed edges: speed = perimeter
    CHECK(c.speed(0.1) == doctest::Approx(5.0 * side).epsilon(1e-14));
    CHECK(c.perimeter() == doctest::Approx(5.0 * side).epsilon(1e-12));
    CHECK_THROWS_AS(c.speed(0.2), CornerParameter);
}

TEST_CASE("periodic closure") {
    for (auto c : {BoundaryCurve::circle(1.0), BoundaryCurve::kite(),
                   BoundaryCurve::regular_polygon(5, 1.0)}) {
        for (double eps : {1e-6, 1e-9, 1e-12})
            CHECK((c.point(1.0 - eps) - c.point(eps)).norm() < 2.5 * c.max_speed() * eps + 1e-12);
        CHECK((c.point(0.0) - c.point(1.0)).norm() < 1e-14);
    }
}

TEST_CASE("finite differences match analytic derivatives") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (auto c : {BoundaryCurve::circle(2.0), BoundaryCurve::kite()}) {
        for (int i = 0; i < 100; ++i) {
            double t = uni(rng);
            double delta = 1e-5;
            Vec2 fd = (c.point(t + delta) - c.point(t - delta)) * (1.0 / (2 * delta));
            Vec2 an = c.derivative(t);
            CHECK((fd - an).norm() < 1e-7 * (1.0 + an.norm()));
        }
    }
}

TEST_CASE("polygon arclength integrates speed exactly") {
    auto c = BoundaryCurve::regular_polygon(7, 1.3);
    // composite midpoint per edge is exact for constant speed
    double total = 0.0;
    const int per_edge = 8;
    for (int e = 0; e < 7; ++e)
        for (int q = 0; q < per_edge; ++q)
            total += c.speed((e + (q + 0.5) / per_edge) / 7.0) / (7.0 * per_edge);
    CHECK(total == doctest::Approx(c.perimeter()).epsilon(1e-12));
}

TEST_CASE("outward normal of a counterclockwise curve") {
    for (auto c : {BoundaryCurve::circle(1.0), BoundaryCurve::kite()}) {
        // catalog curves are traversed counterclockwise (positive signed area)
        double area = 0.0;
        const int q = 2048;
        for (int i = 0; i < q; ++i) {
            double t = (i + 0.5) / q;
            Vec2 z = c.point(t), d = c.derivative(t);
            area += 0.5 * (z.x * d.y - z.y * d.x) / q;
        }
        CHECK(area > 0.0);
        // normal is the tangent rotated by -90 degrees, unit length
        double t = 0.13;
        Vec2 n = c.outward_normal(t);
        Vec2 d = c.derivative(t);
        CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::abs(n.dot(d)) < 1e-12 * d.norm());
        CHECK(n.x * d.y - n.y * d.x > 0.0);
    }
    // circle: outward normal is radial
    auto circ = BoundaryCurve::circle(2.0);
    Vec2 n = circ.outward_normal(0.2);
    Vec2 z = circ.point(0.2);
    CHECK((n - z * (1.0 / z.norm())).norm() < 1e-13);
}

TEST_CASE("custom curve reproduces a smooth shape") {
    auto kite = BoundaryCurve::kite();
    std::vector<Vec2> samples(64);
    for (int i = 0; i < 64; ++i) samples[i] = kite.point(double(i) / 64);
    auto c = BoundaryCurve::custom(samples);
    for (double t : {0.1, 0.37, 0.77}) {
        CHECK((c.point(t) - kite.point(t)).norm() < 1e-10);
        CHECK((c.derivative(t) - kite.derivative(t)).norm() < 1e-7);
    }
}
