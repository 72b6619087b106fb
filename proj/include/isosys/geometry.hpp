#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace isosys {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

// 2x2 matrix acting on Vec2, row-major.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 compose(const Mat2& m) const {
        // (*this) * m
        return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
    }
    static Mat2 rotation(double theta) {
        double ct = std::cos(theta), st = std::sin(theta);
        return {ct, -st, st, ct};
    }
    static Mat2 flip_x() { return {-1.0, 0.0, 0.0, 1.0}; }
    static Mat2 flip_y() { return {1.0, 0.0, 0.0, -1.0}; }
};

// Regular 2n-gon in the canonical presentation: center at the origin, apothem
// 1/2, edges e1 / e1~ on the lines x = -1/2 and x = +1/2, each bisected by the
// x axis. Vertices sit at angles pi/(2n) + k pi/n at the circumradius.
struct PolygonSpec {
    int n = 0;
    double apothem = 0.5;
    double systole = 1.0;
    double rotation_angle = 0.0;  // pi/n
    std::vector<Vec2> vertices;        // 2n, counterclockwise from angle pi/(2n)
    std::vector<Vec2> edge_midpoints;  // 2n, midpoint of e~_{k+1} at angle k pi/n

    double circumradius() const { return 0.5 / std::cos(M_PI / (2.0 * n)); }
    // y of the polygon corner above x = 1/2
    double half_edge() const { return 0.5 * std::tan(M_PI / (2.0 * n)); }
    double flat_area() const { return n * std::tan(M_PI / (2.0 * n)) / 2.0; }
    double flat_perimeter() const { return 4.0 * flat_area(); }
};

PolygonSpec build_polygon(int n);

// omega^alpha = cos(theta) dx + sin(theta) dy with theta = (alpha-1) pi / n.
Vec2 base_one_form(int alpha, int n);

enum class FieldKind { Primal, Dual };

// Result of expressing phi^alpha(p) through the fundamental unknown phi^1 on
// Q_2n: phi^alpha(p) = sign * phi1(point). `rot` maps p to the pre-fold frame.
struct FoldedPoint {
    Vec2 point;
    double sign = 1.0;
};

// Sector-classification tolerance on the symmetry axes; ties resolve toward
// the non-flipped (lower-index) sector.
inline constexpr double kFoldTol = 1e-12;

bool inside_polygon(Vec2 p, int n, double tol = 1e-9);

// Fold a point of the plane into the closed first-quadrant piece Q_2n using
// the x/y reflection parities of the given field kind.
FoldedPoint fold_to_quadrant(Vec2 p, FieldKind kind);

// Map p under band alpha: rotate by -(alpha-1) pi/n, then fold. Returns the
// point in Q_2n and the sign s with phi^alpha(p) = s * phi1(point).
FoldedPoint map_to_fundamental(Vec2 p, int alpha, FieldKind kind, int n);

}  // namespace isosys
