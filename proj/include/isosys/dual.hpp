#pragma once

#include "isosys/mesh.hpp"
#include "isosys/solver.hpp"

namespace isosys {

struct DualSolution {
    const Mesh* mesh = nullptr;
    int n = 0;
    double nu = 0.0;
    ScalarField varphi1;  // on vertices, boundary ties applied
    ScalarField rho;      // sum_alpha |d phi^alpha| on centroids
    double objective = 0.0;
    SolveResult diagnostics;
};

// Discretized dual program: unknowns nu and the free vertex values of phi^1,
// with phi^1 = nu/2 on the x-axis cut and 0 on the non-e1~ polygon edges.
ConvexProgram assemble_dual(const Mesh& mesh, int n);

DualSolution solve_dual(const Mesh& mesh, int n, double tol,
                        const SolveOptions* base_options = nullptr);

// rho^2 per centroid.
ScalarField metric_from_dual(const DualSolution& sol);

// metric at the origin: symmetric average over the centroids nearest (0,0).
double rho2_origin(const DualSolution& sol);

struct GeodesicSet {
    int band = 0;
    double level = 0.0;
    bool out_of_range = false;
    std::vector<std::vector<Vec2>> polylines;  // over the full polygon
};

std::vector<GeodesicSet> extract_geodesics(const DualSolution& sol, int alpha,
                                           const std::vector<double>& levels);

}  // namespace isosys
