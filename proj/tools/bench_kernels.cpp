// Benchmark: OpenMP kernels vs the serial reference on the solver hot path.

#include <chrono>
#include <cstdio>
#include <string>

#include "isosys/dual.hpp"
#include "isosys/parallel.hpp"
#include "isosys/primal.hpp"

using namespace isosys;
using clock_type = std::chrono::steady_clock;

namespace {

double time_solve(const ConvexProgram& program, int iters, bool parallel) {
    par::set_parallel(parallel);
    SolveOptions opt;
    opt.max_iter = iters;
    opt.tol = 1e-300;  // run the full iteration budget
    opt.check_every = iters + 1;
    auto t0 = clock_type::now();
    SolveResult r = solve(program, opt);
    double dt = std::chrono::duration<double>(clock_type::now() - t0).count();
    std::printf("    objective after %d iters: %.9f\n", r.iterations, r.objective);
    return dt;
}

void bench_case(const std::string& name, const ConvexProgram& program, int iters) {
    std::printf("%s: %d groups x %d bands, %d vars, %d iterations\n", name.c_str(),
                program.groups(), program.nbands, program.num_vars, iters);
    double serial = time_solve(program, iters, false);
    std::printf("    serial:   %8.3f s  (%.2f us/iter)\n", serial, 1e6 * serial / iters);
    double parallel = time_solve(program, iters, true);
    std::printf("    openmp:   %8.3f s  (%.2f us/iter, %d threads, speedup %.2fx)\n", parallel,
                1e6 * parallel / iters, par::max_threads(), serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    int Nc = argc > 1 ? std::atoi(argv[1]) : 32;
    int iters = argc > 2 ? std::atoi(argv[2]) : 2000;

    Mesh hex = make_domain_mesh(3, Nc, MeshScheme::HexagonParallelogram);
    bench_case("hexagon dual   N_c=" + std::to_string(Nc), assemble_dual(hex, 3), iters);
    bench_case("hexagon primal N_c=" + std::to_string(Nc), assemble_primal(hex, 3), iters);

    Mesh oct = make_domain_mesh(4, Nc, MeshScheme::GeneralSimilar);
    bench_case("octagon dual   N_c=" + std::to_string(Nc), assemble_dual(oct, 4), iters);

    par::set_parallel(true);
    return 0;
}
