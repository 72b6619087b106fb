#pragma once

#include "isosys/rp2.hpp"

namespace isosys {

// Jet of one band potential Z(X, Y) at a point.
struct BandDerivatives {
    double Z = 0.0;
    double Z_X = 0.0, Z_Y = 0.0;
    double Z_XX = 0.0, Z_XY = 0.0, Z_YY = 0.0;
};

struct MetricOffDiagonal {
    double f = 0.0;
    double f_X = 0.0, f_Y = 0.0;
};

struct LagrangeMultiplier {
    double lambda = 0.0;
    double lambda_X = 0.0, lambda_Y = 0.0;
    double phi0 = 0.0;
};

// L = 2 |Z_X Z_Y| / sqrt(Delta), Delta = (2 Z_X Z_Y)^2 - (Z_X^2 + Z_Y^2 - 1)^2.
double calabi_lagrangian(double Z_X, double Z_Y);

double calabi_discriminant(double Z_X, double Z_Y);

// Left side of the three-band Euler-Lagrange equation in its printed reduced
// form (an overall factor 4 / Delta^{5/2} has been dropped).
double calabi_eom_residual(const BandDerivatives& d);

// domain D: cos^2(pi X) + cos^2(pi Y) <= 1
bool in_band_domain(double X, double Y);

// RP2 band potential cos(pi Z) = cos(pi X) cos(phi0) + cos(pi Y) sin(phi0)
// with all first/second partials.
BandDerivatives z_band(double X, double Y, double phi0);

// f = -cot(pi X) cot(pi Y) and its partials.
MetricOffDiagonal rp2_off_diagonal(double X, double Y);

// tilde-varphi as a function of the band coordinates, with partials.
struct TildePhiXY {
    double value = 0.0;
    double d_X = 0.0, d_Y = 0.0;
};
TildePhiXY tilde_phi_xy(double X, double Y, double phi0);

// lambda = (1/n) cos(tilde-varphi) / sin(pi Z), partials by chain rule.
LagrangeMultiplier multiplier_field(double X, double Y, double phi0, int n);

// lambda rescaled by a function chi of tilde-varphi (chi, chi' supplied).
LagrangeMultiplier rescaled_multiplier(double X, double Y, double phi0, int n,
                                       double (*chi)(double), double (*chi_prime)(double));

// Expanded equation of motion d*(lambda dZ) = 0 for one band.
double new_eom_residual(const BandDerivatives& d, const MetricOffDiagonal& f,
                        const LagrangeMultiplier& lam);

// 2 (1-f^2)/f * integral over phi0 of lambda Z_X Z_Y; equals -pi/n.
double f_eom_integral(DiskPoint p, int n);

}  // namespace isosys
