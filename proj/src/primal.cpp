#include "isosys/primal.hpp"

#include <cmath>
#include <stdexcept>

namespace isosys {

namespace {

bool primal_fixed(uint8_t tag) { return (tag & (kEdgeE1Tilde | kYAxis)) != 0; }

std::vector<int> primal_columns(const Mesh& mesh) {
    std::vector<int> col(mesh.vertex_count(), -1);
    int next = 0;
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if (!primal_fixed(mesh.vertex_tags[v])) col[v] = next++;
    return col;
}

}  // namespace

ConvexProgram assemble_primal(const Mesh& mesh, int n) {
    if (mesh.n != n) throw std::invalid_argument("assemble_primal: mesh/polygon mismatch");
    if (mesh.region.empty() || mesh.vertex_tags.empty())
        throw std::invalid_argument("assemble_primal: mesh not prepared (make_domain_mesh)");

    auto col = primal_columns(mesh);
    int nfree = 0;
    for (int c : col) nfree = std::max(nfree, c + 1);

    ConvexProgram p;
    p.kind = ProgramKind::MinMaxSquare;
    p.nbands = n;
    p.num_vars = nfree;
    p.group_weight.reserve(mesh.region.size());

    std::vector<std::pair<int, double>> entries;
    for (int t : mesh.region) {
        p.group_weight.push_back(mesh.region_weight * mesh.areas[t]);
        const auto& co = mesh.grad_coeff[t];
        for (int alpha = 1; alpha <= n; ++alpha) {
            auto pv = band_pullback(mesh, t, alpha, FieldKind::Primal);
            Vec2 w = base_one_form(alpha, n);
            for (int comp = 0; comp < 2; ++comp) {
                entries.clear();
                double off = comp == 0 ? w.x : w.y;
                for (int k = 0; k < 3; ++k) {
                    double g = comp == 0 ? co[k].x : co[k].y;
                    int c = col[pv[k].vertex];
                    if (c >= 0) entries.push_back({c, g * pv[k].sign});
                    // fixed vertices carry phi1 = 0: no offset contribution
                }
                p.add_row(entries, off);
            }
        }
    }
    p.x0.assign(p.num_vars, 0.0);  // flat admissible start: phi1 = 0, Omega = 1
    p.finalize();
    return p;
}

PrimalSolution solve_primal(const Mesh& mesh, int n, double tol, const SolveOptions* base) {
    ConvexProgram program = assemble_primal(mesh, n);
    SolveOptions opt = base ? *base : SolveOptions{};
    opt.tol = tol;
    SolveResult res = solve(program, opt);

    PrimalSolution sol;
    sol.mesh = &mesh;
    sol.n = n;
    sol.diagnostics = res;
    sol.objective = res.objective;
    sol.phi1 = ScalarField::on_vertices(mesh);
    auto col = primal_columns(mesh);
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if (col[v] >= 0) sol.phi1.values[v] = res.x[col[v]];

    sol.omega = ScalarField::on_centroids(mesh);
    for (int t = 0; t < mesh.plaquette_count(); ++t) {
        const auto& co = mesh.grad_coeff[t];
        double best = 0.0;
        for (int alpha = 1; alpha <= n; ++alpha) {
            auto pv = band_pullback(mesh, t, alpha, FieldKind::Primal);
            Vec2 u = base_one_form(alpha, n);
            for (int k = 0; k < 3; ++k) u = u + co[k] * (pv[k].sign * sol.phi1.values[pv[k].vertex]);
            best = std::max(best, u.norm2());
        }
        sol.omega.values[t] = best;
    }
    return sol;
}

std::vector<ScalarField> length_potentials(const PrimalSolution& sol) {
    const Mesh& mesh = *sol.mesh;
    const int n = sol.n;
    std::vector<ScalarField> X;
    X.reserve(n);
    for (int alpha = 1; alpha <= n; ++alpha) {
        ScalarField f = ScalarField::on_vertices(mesh);
        Vec2 w = base_one_form(alpha, n);
        for (int v = 0; v < mesh.vertex_count(); ++v) {
            FoldedPoint fp = map_to_fundamental(mesh.vertices[v], alpha, FieldKind::Primal, n);
            int q = mesh.find_vertex(fp.point);
            if (q < 0) throw std::runtime_error("length_potentials: fold missed the mesh");
            f.values[v] = w.dot(mesh.vertices[v]) + fp.sign * sol.phi1.values[q];
        }
        X.push_back(std::move(f));
    }
    return X;
}

Vec2 length_potential_gradient(const PrimalSolution& sol, int plaquette, int alpha) {
    const Mesh& mesh = *sol.mesh;
    const auto& co = mesh.grad_coeff[plaquette];
    auto pv = band_pullback(mesh, plaquette, alpha, FieldKind::Primal);
    Vec2 u = base_one_form(alpha, sol.n);
    for (int k = 0; k < 3; ++k) u = u + co[k] * (pv[k].sign * sol.phi1.values[pv[k].vertex]);
    return u;
}

}  // namespace isosys
