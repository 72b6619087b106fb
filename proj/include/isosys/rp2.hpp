#pragma once

#include <vector>

#include "isosys/dual.hpp"
#include "isosys/geometry.hpp"

namespace isosys {

// Point of the disk |z| <= 1/2 carrying the extremal RP2 metric.
struct DiskPoint {
    double x = 0.0;
    double y = 0.0;
    double r2() const { return x * x + y * y; }
};

DiskPoint make_disk_point(double x, double y);  // validates |z| <= 1/2

// Band of geodesics labelled by the azimuth of its starting boundary point.
struct BandLabel {
    double phi0 = 0.0;  // reduced mod pi
};

BandLabel make_band(double phi0);

struct ABPair {
    double a = 0.0;
    double b = 0.0;
};

ABPair ab_pair(DiskPoint p);

// rho^2(z) = (16/pi^2) / (1 + 4|z|^2)^2
double hemisphere_rho2(DiskPoint p);

// x_phi0 in [0,1]: length parameter along the band's geodesics.
double band_length_coordinate(DiskPoint p, BandLabel band);

// tilde-varphi in (-pi/2, pi/2): departure-angle label of the geodesic.
double band_tilde_phi(DiskPoint p, BandLabel band);

// varphi_phi0 = (nu/2) sin(tilde-varphi), in (-nu/2, nu/2).
double band_dual_coordinate(DiskPoint p, BandLabel band, double nu);

// geodesic density |h_phi0| of the reparameterized dual coordinate.
double band_density(DiskPoint p, BandLabel band, double nu);

// integral over phi0 in [0, pi] of |h_phi0| with nu = 2/(pi n); equals pi/n.
double sum_rule(DiskPoint p, int n);

// closed form of the band integral: pi / sqrt(1 - a^2 - b^2).
double conformal_band_integral(double a, double b);

// disk-integrated hemisphere area (quadrature; limit 2/pi).
double hemisphere_disk_area(double rel_tol = 1e-10);

struct HemisphereComparison {
    struct Row {
        Vec2 p;
        double rho2_dual = 0.0;
        double rho2_hemisphere = 0.0;
    };
    std::vector<Row> rows;      // samples along the base and hypotenuse of T_2n
    double max_deviation = 0.0; // over |z| <= 0.35
    double mean_deviation = 0.0;
};

HemisphereComparison polygon_vs_hemisphere(const DualSolution& dual, const Mesh& mesh, int n);

}  // namespace isosys
