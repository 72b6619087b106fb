#include "isosys/geometry.hpp"

namespace isosys {

PolygonSpec build_polygon(int n) {
    if (n < 3) throw std::invalid_argument("build_polygon: n must be >= 3");
    PolygonSpec spec;
    spec.n = n;
    spec.rotation_angle = M_PI / n;
    double R = spec.circumradius();
    spec.vertices.reserve(2 * n);
    spec.edge_midpoints.reserve(2 * n);
    for (int k = 0; k < 2 * n; ++k) {
        double av = M_PI / (2.0 * n) + k * M_PI / n;
        spec.vertices.push_back({R * std::cos(av), R * std::sin(av)});
        double am = k * M_PI / n;
        spec.edge_midpoints.push_back({0.5 * std::cos(am), 0.5 * std::sin(am)});
    }
    return spec;
}

Vec2 base_one_form(int alpha, int n) {
    if (alpha < 1 || alpha > n) throw std::invalid_argument("base_one_form: alpha out of range");
    double theta = (alpha - 1) * M_PI / n;
    return {std::cos(theta), std::sin(theta)};
}

bool inside_polygon(Vec2 p, int n, double tol) {
    // support-function test against all 2n edges
    for (int k = 0; k < 2 * n; ++k) {
        double a = k * M_PI / n;
        if (p.x * std::cos(a) + p.y * std::sin(a) > 0.5 + tol) return false;
    }
    return true;
}

FoldedPoint fold_to_quadrant(Vec2 p, FieldKind kind) {
    // phi1 parities: primal (-,+), dual (+,-)
    const double sx = (kind == FieldKind::Primal) ? -1.0 : 1.0;
    const double sy = (kind == FieldKind::Primal) ? 1.0 : -1.0;
    FoldedPoint f{p, 1.0};
    if (f.point.x < -kFoldTol) {
        f.point.x = -f.point.x;
        f.sign *= sx;
    }
    if (f.point.y < -kFoldTol) {
        f.point.y = -f.point.y;
        f.sign *= sy;
    }
    return f;
}

FoldedPoint map_to_fundamental(Vec2 p, int alpha, FieldKind kind, int n) {
    if (alpha < 1 || alpha > n) throw std::invalid_argument("map_to_fundamental: alpha out of range");
    if (!inside_polygon(p, n)) throw std::domain_error("map_to_fundamental: point outside polygon");
    double theta = (alpha - 1) * M_PI / n;
    Vec2 q{std::cos(theta) * p.x + std::sin(theta) * p.y,
           -std::sin(theta) * p.x + std::cos(theta) * p.y};
    return fold_to_quadrant(q, kind);
}

}  // namespace isosys
