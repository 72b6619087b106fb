#include <cmath>

#include "doctest.h"
#include "isosys/geometry.hpp"

using namespace isosys;

TEST_CASE("build_polygon canonical presentation") {
    SUBCASE("flat areas") {
        CHECK(build_polygon(3).flat_area() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
        CHECK(build_polygon(4).flat_area() ==
              doctest::Approx(2.0 * std::tan(M_PI / 8)).epsilon(1e-12));
        CHECK(build_polygon(5).flat_area() == doctest::Approx(0.812299).epsilon(1e-5));
    }
    SUBCASE("vertices at the circumradius, e1~ bisected by the x axis") {
        for (int n : {3, 4, 5, 8}) {
            PolygonSpec p = build_polygon(n);
            for (const Vec2& v : p.vertices)
                CHECK(v.norm() == doctest::Approx(p.circumradius()).epsilon(1e-12));
            // first and last vertices bound e1~ on x = 1/2
            CHECK(p.vertices[0].x == doctest::Approx(0.5));
            CHECK(p.vertices[2 * n - 1].x == doctest::Approx(0.5));
            CHECK(p.vertices[0].y == doctest::Approx(p.half_edge()));
            CHECK(p.vertices[2 * n - 1].y == doctest::Approx(-p.half_edge()));
        }
    }
    SUBCASE("rotation by pi/n advances vertices") {
        PolygonSpec p = build_polygon(5);
        Mat2 r = Mat2::rotation(p.rotation_angle);
        for (int k = 0; k < 10; ++k) {
            Vec2 w = r.apply(p.vertices[k]);
            Vec2 expect = p.vertices[(k + 1) % 10];
            CHECK(w.x == doctest::Approx(expect.x).epsilon(1e-12));
            CHECK(w.y == doctest::Approx(expect.y).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(build_polygon(2), std::invalid_argument);
}

TEST_CASE("base one-forms") {
    Vec2 w1 = base_one_form(1, 3);
    CHECK(w1.x == doctest::Approx(1.0));
    CHECK(w1.y == doctest::Approx(0.0));
    Vec2 w2 = base_one_form(2, 3);
    CHECK(w2.x == doctest::Approx(0.5));
    CHECK(w2.y == doctest::Approx(std::sqrt(3.0) / 2));
    Vec2 w3 = base_one_form(3, 4);
    CHECK(w3.x == doctest::Approx(0.0));
    CHECK(w3.y == doctest::Approx(1.0));
    CHECK_THROWS_AS(base_one_form(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(base_one_form(4, 3), std::invalid_argument);

    SUBCASE("unit norm, pairwise distinct, unit period") {
        for (int n : {3, 4, 5, 7}) {
            for (int a = 1; a <= n; ++a) {
                Vec2 w = base_one_form(a, n);
                CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-14));
                for (int b = a + 1; b <= n; ++b) {
                    Vec2 v = base_one_form(b, n);
                    CHECK((w - v).norm() > 1e-3);
                }
                // period along the straight segment from e_a to e~_a: the
                // segment is 2 * apothem long in direction omega^a
                Vec2 mid{0.5 * std::cos((a - 1) * M_PI / n), 0.5 * std::sin((a - 1) * M_PI / n)};
                Vec2 seg = mid * 2.0;
                CHECK(w.dot(seg) == doctest::Approx(1.0).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("map_to_fundamental matches the worked instances") {
    const double s3 = std::sqrt(3.0);
    Vec2 p{0.31, 0.11};  // inside T_6

    SUBCASE("identity band") {
        FoldedPoint f = map_to_fundamental(p, 1, FieldKind::Primal, 3);
        CHECK(f.sign == 1.0);
        CHECK(f.point.x == doctest::Approx(p.x));
        CHECK(f.point.y == doctest::Approx(p.y));
    }
    SUBCASE("hexagon band 2") {
        Vec2 expect{0.5 * p.x + s3 / 2 * p.y, s3 / 2 * p.x - 0.5 * p.y};
        FoldedPoint fp = map_to_fundamental(p, 2, FieldKind::Primal, 3);
        CHECK(fp.sign == 1.0);
        CHECK(fp.point.x == doctest::Approx(expect.x).epsilon(1e-13));
        CHECK(fp.point.y == doctest::Approx(expect.y).epsilon(1e-13));
        FoldedPoint fd = map_to_fundamental(p, 2, FieldKind::Dual, 3);
        CHECK(fd.sign == -1.0);
        CHECK(fd.point.x == doctest::Approx(expect.x).epsilon(1e-13));
    }
    SUBCASE("hexagon band 3") {
        Vec2 expect{0.5 * p.x - s3 / 2 * p.y, s3 / 2 * p.x + 0.5 * p.y};
        FoldedPoint fp = map_to_fundamental(p, 3, FieldKind::Primal, 3);
        CHECK(fp.sign == -1.0);
        CHECK(fp.point.x == doctest::Approx(expect.x).epsilon(1e-13));
        CHECK(fp.point.y == doctest::Approx(expect.y).epsilon(1e-13));
        FoldedPoint fd = map_to_fundamental(p, 3, FieldKind::Dual, 3);
        CHECK(fd.sign == -1.0);
    }
    SUBCASE("octagon instances") {
        const double r2 = std::sqrt(2.0);
        Vec2 q{0.41, 0.13};
        FoldedPoint f2 = map_to_fundamental(q, 2, FieldKind::Primal, 4);
        CHECK(f2.sign == 1.0);
        CHECK(f2.point.x == doctest::Approx((q.x + q.y) / r2).epsilon(1e-13));
        CHECK(f2.point.y == doctest::Approx((q.x - q.y) / r2).epsilon(1e-13));
        FoldedPoint f3 = map_to_fundamental(q, 3, FieldKind::Primal, 4);
        CHECK(f3.sign == 1.0);
        CHECK(f3.point.x == doctest::Approx(q.y).epsilon(1e-13));
        CHECK(f3.point.y == doctest::Approx(q.x).epsilon(1e-13));
        FoldedPoint f3d = map_to_fundamental(q, 3, FieldKind::Dual, 4);
        CHECK(f3d.sign == -1.0);
        FoldedPoint f4 = map_to_fundamental(q, 4, FieldKind::Primal, 4);
        CHECK(f4.sign == -1.0);
        CHECK(f4.point.x == doctest::Approx((q.x - q.y) / r2).epsilon(1e-13));
        CHECK(f4.point.y == doctest::Approx((q.x + q.y) / r2).epsilon(1e-13));
    }
    SUBCASE("out of domain") {
        CHECK_THROWS_AS(map_to_fundamental({2.0, 2.0}, 1, FieldKind::Primal, 3),
                        std::domain_error);
    }
}

TEST_CASE("fold round trip preserves points") {
    // applying the map and undoing rotation/flips reproduces the point
    for (int n : {3, 5}) {
        for (int alpha = 1; alpha <= n; ++alpha) {
            for (double t : {0.13, 0.37, 0.61}) {
                // points sampled inside the polygon on a spiral
                Vec2 p{0.4 * t * std::cos(5 * t), 0.4 * t * std::sin(5 * t)};
                REQUIRE(inside_polygon(p, n, 1e-9));
                FoldedPoint f = map_to_fundamental(p, alpha, FieldKind::Dual, n);
                CHECK(f.point.x >= -1e-12);
                CHECK(f.point.y >= -1e-12);
                // reconstruct: rotate the folded point back through every
                // flip combination; one of them must reproduce p
                double theta = (alpha - 1) * M_PI / n;
                bool found = false;
                for (double sx : {1.0, -1.0}) {
                    for (double sy : {1.0, -1.0}) {
                        Vec2 w{sx * f.point.x, sy * f.point.y};
                        Vec2 back = Mat2::rotation(theta).apply(w);
                        if ((back - p).norm() < 1e-12) found = true;
                    }
                }
                CHECK(found);
            }
        }
    }
}
