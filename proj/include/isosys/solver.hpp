#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isosys/geometry.hpp"

namespace isosys {

// Two problem shapes produced by the assemblers. With v = K x + b stacked as
// one 2-vector per (group, band):
//   MinMaxSquare:  minimize   sum_g w_g max_b |v_{g,b}|^2        (primal)
//   MaxSumSquare:  maximize   c_nu x[nu] - sum_g w_g (sum_b |v_{g,b}|)^2
enum class ProgramKind { MinMaxSquare, MaxSumSquare };

struct ConvexProgram {
    ProgramKind kind = ProgramKind::MinMaxSquare;
    int nbands = 0;
    int num_vars = 0;
    int nu_col = -1;                 // slot of the scalar nu unknown, -1 if none
    double nu_objective_coeff = 0.0; // 2n for the dual program
    std::vector<double> group_weight;

    // K in CSR; rows come in pairs (x,y components) per (group, band).
    std::vector<int> row_ptr{0};
    std::vector<int> col_idx;
    std::vector<double> val;
    std::vector<double> offset;  // constant per row

    std::vector<double> x0;  // start point (assembler's choice)

    // transpose (CSC), built by finalize()
    std::vector<int> ct_ptr, ct_row;
    std::vector<double> ct_val;

    int rows() const { return static_cast<int>(offset.size()); }
    int groups() const { return static_cast<int>(group_weight.size()); }

    void add_row(const std::vector<std::pair<int, double>>& entries, double off);
    void finalize();  // builds the transpose; call once after assembly
    bool well_formed() const;
};

struct SolveOptions {
    double tol = 1e-7;
    int max_iter = 200000;
    uint64_t seed = 0;
    double huber_eps = 0.0;       // optional smoothing of dual norms; 0 = exact prox
    int check_every = 100;        // stopping-test cadence (iterations)
    std::string trace_path;       // iteration-trace CSV when non-empty
};

struct SolveResult {
    std::vector<double> x;
    double objective = 0.0;
    double feasibility_residual = 0.0;  // max cone violation of the reported point
    int iterations = 0;
    bool converged = false;
    double tol_achieved = 0.0;  // last relative objective change observed
};

SolveResult solve(const ConvexProgram& program, const SolveOptions& options);

inline SolveResult solve(const ConvexProgram& program, double tol, int max_iter, uint64_t seed) {
    SolveOptions opt;
    opt.tol = tol;
    opt.max_iter = max_iter;
    opt.seed = seed;
    return solve(program, opt);
}

// |v_{g,b}| norms of v = K x + b for a solution vector; layout groups x bands.
std::vector<double> group_norms(const ConvexProgram& program, const std::vector<double>& x);

double objective_value(const ConvexProgram& program, const std::vector<double>& x);

}  // namespace isosys
