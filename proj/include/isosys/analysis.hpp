#pragma once

#include <string>
#include <utility>
#include <vector>

#include "isosys/dual.hpp"
#include "isosys/primal.hpp"

namespace isosys {

struct RunReport {
    int n = 0;
    int resolution = 0;
    std::string kind;  // "primal" | "dual"
    double area = 0.0;
    double perimeter = 0.0;
    double edge_length = 0.0;
    double nu = 0.0;
    double rho2_origin = 0.0;
    // identity residuals
    double res_area_nu = 0.0;        // A - n nu
    double res_perimeter_area = 0.0; // P - 4A
    double res_edge_nu = 0.0;        // L_e - 2 nu
    double dual_primal_gap = 0.0;    // primal - dual when both solved, else NaN
    bool pass_area_nu = false;       // |A - n nu| / A <= 5e-3
    bool pass_perimeter_area = false;// |P - 4A| / (4A) <= 2e-2
    double seconds = 0.0;
};

// P = 2n * integral of sqrt(rho^2) along e1~, midpoint rule on the row of
// centroids adjacent to the edge; the vertex-adjacent sample is clamped to
// its inward neighbor.
double perimeter(const ScalarField& rho2, const Mesh& mesh, int n);

RunReport check_identities(const PrimalSolution* primal, const DualSolution& dual, int n);

struct ExtrapolationFit {
    std::string quantity;
    double a = 0.0;
    double b = 0.0;
    double q_star = 0.0;
    bool b_defined = false;
};

// Fit e(N) = a / N^b against the largest-N sample and extrapolate
// q_star = q(N_max) - e(N_max).
ExtrapolationFit extrapolate(const std::vector<std::pair<int, double>>& samples,
                             const std::string& quantity = "");

// Local angle between bands alpha and beta, per centroid; NaN where rho^2
// is below 1e-12.
ScalarField band_angle(const PrimalSolution& sol, int alpha, int beta);

// Riemannian area density rho~^2 reconstructed from three band potentials;
// NaN where |f| >= 1 (outside the gamma band's region).
ScalarField riemannian_area_form(const PrimalSolution& sol, int alpha, int beta, int gamma);

}  // namespace isosys
