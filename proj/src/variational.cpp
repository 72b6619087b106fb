#include "isosys/variational.hpp"

#include <cmath>
#include <stdexcept>

#include "isosys/quadrature.hpp"

namespace isosys {

double calabi_discriminant(double zx, double zy) {
    double s = zx * zx + zy * zy - 1.0;
    double m = 2.0 * zx * zy;
    return m * m - s * s;
}

double calabi_lagrangian(double zx, double zy) {
    double delta = calabi_discriminant(zx, zy);
    if (delta <= 0.0) throw std::domain_error("calabi_lagrangian: degenerate band (Delta <= 0)");
    return 2.0 * std::abs(zx * zy) / std::sqrt(delta);
}

namespace {

double eom_f(double zx, double zy) {
    double x2 = zx * zx, y2 = zy * zy;
    return zx * zy *
           (3.0 - 5.0 * x2 - 3.0 * y2 + x2 * x2 + 10.0 * x2 * y2 - 3.0 * y2 * y2 +
            x2 * x2 * x2 + x2 * x2 * y2 - 5.0 * x2 * y2 * y2 + 3.0 * y2 * y2 * y2);
}

double eom_g(double zx, double zy) {
    double x2 = zx * zx, y2 = zy * zy;
    double x4 = x2 * x2, y4 = y2 * y2;
    return 1.0 - 2.0 * x2 - 2.0 * y2 + 16.0 * x2 * y2 + 2.0 * x4 * x2 - 10.0 * x4 * y2 -
           10.0 * x2 * y4 + 2.0 * y4 * y2 - x4 * x4 - 4.0 * x4 * x2 * y2 + 10.0 * x4 * y4 -
           4.0 * x2 * y4 * y2 - y4 * y4;
}

}  // namespace

double calabi_eom_residual(const BandDerivatives& d) {
    return eom_f(d.Z_X, d.Z_Y) * d.Z_XX + eom_g(d.Z_X, d.Z_Y) * d.Z_XY +
           eom_f(d.Z_Y, d.Z_X) * d.Z_YY;
}

bool in_band_domain(double X, double Y) {
    double cx = std::cos(M_PI * X), cy = std::cos(M_PI * Y);
    return cx * cx + cy * cy <= 1.0 + 1e-12;
}

BandDerivatives z_band(double X, double Y, double phi0) {
    if (!in_band_domain(X, Y)) throw std::domain_error("z_band: point outside the band domain D");
    const double c0 = std::cos(phi0), s0 = std::sin(phi0);
    const double cx = std::cos(M_PI * X), sx = std::sin(M_PI * X);
    const double cy = std::cos(M_PI * Y), sy = std::sin(M_PI * Y);
    const double cz = cx * c0 + cy * s0;
    BandDerivatives d;
    d.Z = std::acos(std::clamp(cz, -1.0, 1.0)) / M_PI;
    const double sz = std::sin(M_PI * d.Z);
    if (sz < 1e-14) throw std::domain_error("z_band: band degenerates (sin pi Z = 0)");
    d.Z_X = sx * c0 / sz;
    d.Z_Y = sy * s0 / sz;
    const double czz = cz / (sz * sz * sz);
    d.Z_XX = (cx / sz - sx * sx * czz * c0) * M_PI * c0;
    d.Z_XY = -(sx * sy * czz) * M_PI * c0 * s0;
    d.Z_YY = (cy / sz - sy * sy * czz * s0) * M_PI * s0;
    return d;
}

MetricOffDiagonal rp2_off_diagonal(double X, double Y) {
    const double sx = std::sin(M_PI * X), sy = std::sin(M_PI * Y);
    const double cx = std::cos(M_PI * X), cy = std::cos(M_PI * Y);
    if (std::abs(sx) < 1e-14 || std::abs(sy) < 1e-14)
        throw std::domain_error("rp2_off_diagonal: singular at integer X or Y");
    MetricOffDiagonal m;
    m.f = -(cx / sx) * (cy / sy);
    m.f_X = M_PI * (cy / sy) / (sx * sx);
    m.f_Y = M_PI * (cx / sx) / (sy * sy);
    return m;
}

TildePhiXY tilde_phi_xy(double X, double Y, double phi0) {
    const double cx = std::cos(M_PI * X), cy = std::cos(M_PI * Y);
    const double s2 = cx * cx + cy * cy;  // sin^2 theta
    const double st = std::sqrt(s2);
    const double ct = std::sqrt(std::max(0.0, 1.0 - s2));  // upper hemisphere
    const double phi = std::atan2(cy, cx);
    const double s = std::sin(phi - phi0), c = std::cos(phi - phi0);
    TildePhiXY out;
    out.value = std::atan2(-st * s, ct);
    // (theta, phi) in terms of (X, Y): differentiate cos(pi X) = sin(theta) cos(phi)
    //  [ct*cos(phi)  -st*sin(phi)] [dtheta]   [-pi sin(pi X) dX]
    //  [ct*sin(phi)   st*cos(phi)] [dphi  ] = [-pi sin(pi Y) dY]
    const double det = ct * st;
    if (std::abs(det) < 1e-14)
        throw std::domain_error("tilde_phi_xy: coordinate frame degenerates");
    const double sx = std::sin(M_PI * X), sy = std::sin(M_PI * Y);
    const double dtheta_dX = -M_PI * sx * (st * std::cos(phi)) / det;
    const double dtheta_dY = -M_PI * sy * (st * std::sin(phi)) / det;
    const double dphi_dX = M_PI * sx * (ct * std::sin(phi)) / det;
    const double dphi_dY = -M_PI * sy * (ct * std::cos(phi)) / det;
    const double denom = ct * ct + st * st * s * s;
    const double dt_dtheta = (-ct * s * ct - st * s * st) / denom;
    const double dt_dphi = (-st * c * ct) / denom;
    out.d_X = dt_dtheta * dtheta_dX + dt_dphi * dphi_dX;
    out.d_Y = dt_dtheta * dtheta_dY + dt_dphi * dphi_dY;
    return out;
}

LagrangeMultiplier multiplier_field(double X, double Y, double phi0, int n) {
    if (n < 1) throw std::invalid_argument("multiplier_field: n must be >= 1");
    BandDerivatives d = z_band(X, Y, phi0);
    TildePhiXY tp = tilde_phi_xy(X, Y, phi0);
    const double sz = std::sin(M_PI * d.Z), cz = std::cos(M_PI * d.Z);
    const double beta = 1.0 / n;
    LagrangeMultiplier lam;
    lam.phi0 = phi0;
    lam.lambda = beta * std::cos(tp.value) / sz;
    const double dsz = -M_PI * cz / (sz * sz);  // d(1/sz)/dZ
    lam.lambda_X = beta * (-std::sin(tp.value) * tp.d_X / sz + std::cos(tp.value) * dsz * d.Z_X);
    lam.lambda_Y = beta * (-std::sin(tp.value) * tp.d_Y / sz + std::cos(tp.value) * dsz * d.Z_Y);
    return lam;
}

LagrangeMultiplier rescaled_multiplier(double X, double Y, double phi0, int n,
                                       double (*chi)(double), double (*chi_prime)(double)) {
    LagrangeMultiplier base = multiplier_field(X, Y, phi0, n);
    TildePhiXY tp = tilde_phi_xy(X, Y, phi0);
    LagrangeMultiplier out;
    out.phi0 = phi0;
    out.lambda = chi(tp.value) * base.lambda;
    out.lambda_X = chi(tp.value) * base.lambda_X + chi_prime(tp.value) * tp.d_X * base.lambda;
    out.lambda_Y = chi(tp.value) * base.lambda_Y + chi_prime(tp.value) * tp.d_Y * base.lambda;
    return out;
}

double new_eom_residual(const BandDerivatives& d, const MetricOffDiagonal& m,
                        const LagrangeMultiplier& lam) {
    const double omf2 = 1.0 - m.f * m.f;
    if (omf2 <= 0.0) throw std::domain_error("new_eom_residual: |f| >= 1");
    return d.Z_XX + d.Z_YY + 2.0 * m.f * d.Z_XY +
           d.Z_X * ((lam.lambda_X + m.f * lam.lambda_Y) / lam.lambda +
                    (m.f_Y + m.f * m.f_X) / omf2) +
           d.Z_Y * ((lam.lambda_Y + m.f * lam.lambda_X) / lam.lambda +
                    (m.f_X + m.f * m.f_Y) / omf2);
}

double f_eom_integral(DiskPoint p, int n) {
    ABPair ab = ab_pair(p);
    const double a = ab.a, b = ab.b;
    const double beta = 1.0 / n;
    const double pref = -(1.0 - a * a - b * b) / (b * std::sqrt(1.0 - a * a));
    auto integrand = [&](double phi0) {
        double denom = 1.0 - a * std::cos(2.0 * phi0) - b * std::sin(2.0 * phi0);
        double lam = beta * std::sqrt(1.0 - a * a - b * b) / denom;
        double zxzy = std::sqrt(1.0 - a * a) * std::sin(2.0 * phi0) / (2.0 * denom);
        return 2.0 * pref * lam * zxzy;
    };
    auto q = integrate(integrand, 0.0, M_PI, 1e-13, 1e-11);
    if (!q.converged) throw std::runtime_error("f_eom_integral: quadrature failed");
    return q.value;
}

}  // namespace isosys
