#include "isosys/rp2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isosys/quadrature.hpp"

namespace isosys {

DiskPoint make_disk_point(double x, double y) {
    if (x * x + y * y > 0.25 + 1e-12)
        throw std::domain_error("make_disk_point: outside the |z| <= 1/2 disk");
    return {x, y};
}

BandLabel make_band(double phi0) {
    double r = std::fmod(phi0, M_PI);
    if (r < 0) r += M_PI;
    return {r};
}

ABPair ab_pair(DiskPoint p) {
    double z4 = p.r2() * p.r2();
    double denom = 1.0 + 16.0 * z4;
    return {8.0 * (p.x * p.x - p.y * p.y) / denom, 16.0 * p.x * p.y / denom};
}

double hemisphere_rho2(DiskPoint p) {
    double d = 1.0 + 4.0 * p.r2();
    return 16.0 / (M_PI * M_PI * d * d);
}

double band_length_coordinate(DiskPoint p, BandLabel band) {
    double c = 4.0 * (p.x * std::cos(band.phi0) + p.y * std::sin(band.phi0)) / (1.0 + 4.0 * p.r2());
    return std::acos(std::clamp(c, -1.0, 1.0)) / M_PI;
}

double band_tilde_phi(DiskPoint p, BandLabel band) {
    double num = 4.0 * (p.y * std::cos(band.phi0) - p.x * std::sin(band.phi0));
    return -std::atan2(num, 1.0 - 4.0 * p.r2());
}

double band_dual_coordinate(DiskPoint p, BandLabel band, double nu) {
    return 0.5 * nu * std::sin(band_tilde_phi(p, band));
}

double band_density(DiskPoint p, BandLabel band, double nu) {
    double z4 = p.r2() * p.r2();
    ABPair ab = ab_pair(p);
    double denom = 1.0 - ab.a * std::cos(2.0 * band.phi0) - ab.b * std::sin(2.0 * band.phi0);
    return 0.5 * M_PI * nu * (1.0 - 16.0 * z4) / (1.0 + 16.0 * z4) / denom;
}

double sum_rule(DiskPoint p, int n) {
    const double nu = 2.0 / (M_PI * n);
    auto q = integrate([&](double phi0) { return band_density(p, {phi0}, nu); }, 0.0, M_PI,
                       1e-13, 1e-11);
    if (!q.converged) throw std::runtime_error("sum_rule: quadrature failed to converge");
    return q.value;
}

double conformal_band_integral(double a, double b) {
    return M_PI / std::sqrt(1.0 - (a * a + b * b));
}

double hemisphere_disk_area(double rel_tol) {
    auto q = integrate(
        [&](double r) {
            double d = 1.0 + 4.0 * r * r;
            return 2.0 * M_PI * r * 16.0 / (M_PI * M_PI * d * d);
        },
        0.0, 0.5, 1e-14, rel_tol);
    return q.value;
}

HemisphereComparison polygon_vs_hemisphere(const DualSolution& dual, const Mesh& mesh, int n) {
    HemisphereComparison cmp;
    const double h = 0.5 * std::tan(M_PI / (2.0 * n));
    // base row: region centroids closest to the x axis; hypotenuse row: region
    // centroids closest to the line y = 2 h x
    double dbase = 1e300, dhyp = 1e300;
    const double hyp_norm = std::hypot(2.0 * h, 1.0);
    auto hyp_dist = [&](Vec2 c) { return std::abs(2.0 * h * c.x - c.y) / hyp_norm; };
    for (int t : mesh.region) {
        dbase = std::min(dbase, std::abs(mesh.centroids[t].y));
        dhyp = std::min(dhyp, hyp_dist(mesh.centroids[t]));
    }
    ScalarField rho2 = metric_from_dual(dual);
    for (int t : mesh.region) {
        Vec2 c = mesh.centroids[t];
        bool base_row = std::abs(c.y) <= dbase + 1e-12;
        bool hyp_row = hyp_dist(c) <= dhyp + 1e-12;
        if (!base_row && !hyp_row) continue;
        cmp.rows.push_back({c, rho2.values[t], hemisphere_rho2({c.x, c.y})});
    }
    std::sort(cmp.rows.begin(), cmp.rows.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.p.x, a.p.y) < std::make_pair(b.p.x, b.p.y);
    });
    double sum = 0.0;
    int count = 0;
    for (const auto& row : cmp.rows) {
        if (row.p.norm() > 0.35) continue;
        double dev = std::abs(row.rho2_dual - row.rho2_hemisphere);
        cmp.max_deviation = std::max(cmp.max_deviation, dev);
        sum += dev;
        ++count;
    }
    cmp.mean_deviation = count ? sum / count : 0.0;
    return cmp;
}

}  // namespace isosys
