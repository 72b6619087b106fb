#pragma once

#include "isosys/mesh.hpp"
#include "isosys/solver.hpp"

namespace isosys {

struct PrimalSolution {
    const Mesh* mesh = nullptr;
    int n = 0;
    ScalarField omega;  // rho^2 on centroids
    ScalarField phi1;   // on vertices, Dirichlet values applied
    double objective = 0.0;
    SolveResult diagnostics;
};

// Discretized primal program over the mesh's assembly region: one cone group
// per plaquette, |omega^alpha + d phi^alpha|^2 <= Omega for every band.
ConvexProgram assemble_primal(const Mesh& mesh, int n);

PrimalSolution solve_primal(const Mesh& mesh, int n, double tol,
                            const SolveOptions* base_options = nullptr);

// X^alpha = omega^alpha . (x,y) + phi^alpha on mesh vertices.
std::vector<ScalarField> length_potentials(const PrimalSolution& sol);

// d X^alpha = omega^alpha + d phi^alpha at one plaquette.
Vec2 length_potential_gradient(const PrimalSolution& sol, int plaquette, int alpha);

}  // namespace isosys
