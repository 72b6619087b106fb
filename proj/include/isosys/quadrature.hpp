#pragma once

#include <cmath>
#include <cstddef>

namespace isosys {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
    bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144838258730,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329};
inline constexpr double kKronrodWeights[8] = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970};
inline constexpr double kGaussWeights[4] = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082};

template <typename F>
void gk15(const F& f, double a, double b, double& value, double& err) {
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kKronrodWeights[0] * fc;
    double gauss = kGaussWeights[0] * fc;
    for (int i = 1; i < 8; ++i) {
        const double dx = hl * kKronrodNodes[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kKronrodWeights[i] * fsum;
        if (i % 2 == 0) gauss += kGaussWeights[i / 2] * fsum;
    }
    value = kron * hl;
    err = std::abs((kron - gauss) * hl);
}

template <typename F>
void adapt(const F& f, double a, double b, double abs_tol, double rel_tol, int depth,
           QuadratureResult& out) {
    double v, e;
    gk15(f, a, b, v, e);
    out.evaluations += 15;
    if (depth <= 0 || e <= abs_tol + rel_tol * std::abs(v)) {
        out.value += v;
        out.error += e;
        if (depth <= 0 && e > abs_tol + rel_tol * std::abs(v)) out.converged = false;
        return;
    }
    const double c = 0.5 * (a + b);
    adapt(f, a, c, abs_tol / 2, rel_tol, depth - 1, out);
    adapt(f, c, b, abs_tol / 2, rel_tol, depth - 1, out);
}

}  // namespace detail

template <typename F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-10, int max_depth = 28) {
    QuadratureResult out;
    detail::adapt(f, a, b, abs_tol, rel_tol, max_depth, out);
    return out;
}

}  // namespace isosys
