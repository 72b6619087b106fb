#include "isosys/dual.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace isosys {

namespace {

bool dual_zero(uint8_t tag) { return (tag & kOtherPolygonEdge) && !(tag & kXAxis); }
bool dual_cut(uint8_t tag) { return (tag & kXAxis) != 0; }

std::vector<int> dual_columns(const Mesh& mesh) {
    std::vector<int> col(mesh.vertex_count(), -1);
    int next = 0;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        uint8_t t = mesh.vertex_tags[v];
        if (!dual_zero(t) && !dual_cut(t)) col[v] = next++;
    }
    return col;
}

// height of the upper polygon boundary above abscissa x (first quadrant)
double upper_boundary(double x, int n) {
    double best = 1e9;
    for (int k = 1; k < 2 * n; ++k) {
        double a = k * M_PI / n;
        if (std::sin(a) <= 1e-12) continue;
        double y = (0.5 - x * std::cos(a)) / std::sin(a);
        if (y >= -1e-12) best = std::min(best, y);
    }
    return best;
}

}  // namespace

ConvexProgram assemble_dual(const Mesh& mesh, int n) {
    if (mesh.n != n) throw std::invalid_argument("assemble_dual: mesh/polygon mismatch");
    if (mesh.region.empty() || mesh.vertex_tags.empty())
        throw std::invalid_argument("assemble_dual: mesh not prepared (make_domain_mesh)");

    auto col = dual_columns(mesh);
    int nfree = 0;
    for (int c : col) nfree = std::max(nfree, c + 1);

    ConvexProgram p;
    p.kind = ProgramKind::MaxSumSquare;
    p.nbands = n;
    p.num_vars = nfree + 1;
    p.nu_col = nfree;
    p.nu_objective_coeff = 2.0 * n;
    p.group_weight.reserve(mesh.region.size());

    std::vector<std::pair<int, double>> entries;
    for (int t : mesh.region) {
        p.group_weight.push_back(mesh.region_weight * mesh.areas[t]);
        const auto& co = mesh.grad_coeff[t];
        for (int alpha = 1; alpha <= n; ++alpha) {
            auto pv = band_pullback(mesh, t, alpha, FieldKind::Dual);
            for (int comp = 0; comp < 2; ++comp) {
                entries.clear();
                double nu_coef = 0.0;
                for (int k = 0; k < 3; ++k) {
                    double g = comp == 0 ? co[k].x : co[k].y;
                    uint8_t tag = mesh.vertex_tags[pv[k].vertex];
                    if (dual_cut(tag)) {
                        nu_coef += g * (pv[k].sign * 0.5 + pv[k].jump);
                    } else if (dual_zero(tag)) {
                        nu_coef += g * pv[k].jump;
                    } else {
                        entries.push_back({col[pv[k].vertex], g * pv[k].sign});
                        nu_coef += g * pv[k].jump;
                    }
                }
                if (nu_coef != 0.0) entries.push_back({p.nu_col, nu_coef});
                p.add_row(entries, 0.0);
            }
        }
    }
    // start: nu = 1/2, phi1 a linear-in-y interpolation of its boundary data
    p.x0.assign(p.num_vars, 0.0);
    p.x0[p.nu_col] = 0.5;
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        if (col[v] < 0) continue;
        Vec2 q = mesh.vertices[v];
        double Y = upper_boundary(std::abs(q.x), n);
        double frac = Y > 1e-12 ? std::clamp(1.0 - std::abs(q.y) / Y, 0.0, 1.0) : 0.0;
        p.x0[col[v]] = 0.25 * frac;
    }
    p.finalize();
    return p;
}

DualSolution solve_dual(const Mesh& mesh, int n, double tol, const SolveOptions* base) {
    ConvexProgram program = assemble_dual(mesh, n);
    SolveOptions opt = base ? *base : SolveOptions{};
    opt.tol = tol;
    SolveResult res = solve(program, opt);

    DualSolution sol;
    sol.mesh = &mesh;
    sol.n = n;
    sol.diagnostics = res;
    sol.objective = res.objective;
    sol.nu = res.x[program.nu_col];
    sol.varphi1 = ScalarField::on_vertices(mesh);
    auto col = dual_columns(mesh);
    for (int v = 0; v < mesh.vertex_count(); ++v) {
        uint8_t t = mesh.vertex_tags[v];
        if (dual_cut(t))
            sol.varphi1.values[v] = sol.nu / 2.0;
        else if (!dual_zero(t))
            sol.varphi1.values[v] = res.x[col[v]];
    }
    sol.rho = ScalarField::on_centroids(mesh);
    for (int t = 0; t < mesh.plaquette_count(); ++t)
        sol.rho.values[t] = dual_rho_at(mesh, t, sol.varphi1.values, sol.nu, n);
    return sol;
}

ScalarField metric_from_dual(const DualSolution& sol) {
    ScalarField rho2 = ScalarField::on_centroids(*sol.mesh);
    for (size_t t = 0; t < rho2.values.size(); ++t)
        rho2.values[t] = sol.rho.values[t] * sol.rho.values[t];
    return rho2;
}

double rho2_origin(const DualSolution& sol) {
    const Mesh& mesh = *sol.mesh;
    double dmin = 1e300;
    for (const Vec2& c : mesh.centroids) dmin = std::min(dmin, c.norm());
    double sum = 0.0;
    int count = 0;
    for (int t = 0; t < mesh.plaquette_count(); ++t) {
        if (mesh.centroids[t].norm() <= dmin + 1e-12) {
            sum += sol.rho.values[t] * sol.rho.values[t];
            ++count;
        }
    }
    return sum / count;
}

namespace {

uint64_t qkey(Vec2 p) {
    auto q = [](double v) -> uint64_t {
        return static_cast<uint64_t>(std::llround(v * 1e9) + (int64_t{1} << 31));
    };
    return (q(p.x) << 32) | (q(p.y) & 0xffffffffULL);
}

}  // namespace

std::vector<GeodesicSet> extract_geodesics(const DualSolution& sol, int alpha,
                                           const std::vector<double>& levels) {
    const Mesh& mesh = *sol.mesh;
    const int n = sol.n;
    if (alpha < 1 || alpha > n) throw std::invalid_argument("extract_geodesics: band out of range");

    // tile the polygon with dihedral images of the assembly region
    std::vector<Mat2> images;
    if (mesh.region_weight == 4.0 * n) {
        for (int k = 0; k < 2 * n; ++k) {
            Mat2 r = Mat2::rotation(k * M_PI / n);
            images.push_back(r);
            images.push_back(r.compose(Mat2::flip_y()));
        }
    } else {
        for (int k = 0; k < 2 * n; ++k) images.push_back(Mat2::rotation(k * M_PI / n));
    }

    struct Tri {
        std::array<Vec2, 3> p;
        std::array<double, 3> f;
    };
    std::vector<Tri> soup;
    soup.reserve(images.size() * mesh.region.size());
    const double theta = (alpha - 1) * M_PI / n;
    const Mat2 rot = Mat2::rotation(-theta);
    for (const Mat2& g : images) {
        for (int t : mesh.region) {
            Tri tri;
            Vec2 c{0.0, 0.0};
            for (int k = 0; k < 3; ++k) {
                tri.p[k] = g.apply(mesh.vertices[mesh.plaquettes[t][k]]);
                c = c + tri.p[k] * (1.0 / 3.0);
            }
            const bool branch_up = rot.apply(c).y >= -kFoldTol;
            for (int k = 0; k < 3; ++k) {
                Vec2 w = rot.apply(tri.p[k]);
                FoldedPoint fp = fold_to_quadrant(w, FieldKind::Dual);
                int vid = mesh.find_vertex(fp.point);
                if (vid < 0) throw std::runtime_error("extract_geodesics: fold missed the mesh");
                double jump = 0.0;
                bool above = w.y >= -kFoldTol;
                if (branch_up && !above) jump = 1.0;
                if (!branch_up && above) jump = -1.0;
                tri.f[k] = fp.sign * sol.varphi1.values[vid] + jump * sol.nu;
            }
            soup.push_back(tri);
        }
    }

    std::vector<GeodesicSet> out;
    const Vec2 dir = base_one_form(alpha, n);
    for (double level0 : levels) {
        GeodesicSet set;
        set.band = alpha;
        set.level = level0;
        if (!(level0 > -sol.nu / 2 && level0 < sol.nu / 2)) {
            set.out_of_range = true;
            out.push_back(std::move(set));
            continue;
        }
        double level = level0;
        bool degenerate = true;
        while (degenerate) {
            degenerate = false;
            for (const Tri& t : soup)
                for (double f : t.f)
                    if (f == level) degenerate = true;
            if (degenerate) level += 1e-12;
        }
        // marching triangles: collect crossing segments
        std::vector<std::array<Vec2, 2>> segs;
        for (const Tri& t : soup) {
            Vec2 pts[3];
            int np = 0;
            for (int e = 0; e < 3; ++e) {
                double fa = t.f[e], fb = t.f[(e + 1) % 3];
                if ((fa - level) * (fb - level) < 0.0) {
                    double w = (level - fa) / (fb - fa);
                    Vec2 p = t.p[e] + (t.p[(e + 1) % 3] - t.p[e]) * w;
                    if (np < 3) pts[np++] = p;
                }
            }
            if (np == 2) segs.push_back({pts[0], pts[1]});
        }
        // chain segments into polylines
        std::multimap<uint64_t, int> ends;
        for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
            ends.insert({qkey(segs[i][0]), i});
            ends.insert({qkey(segs[i][1]), i});
        }
        std::vector<bool> used(segs.size(), false);
        for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
            if (used[i]) continue;
            used[i] = true;
            std::vector<Vec2> line{segs[i][0], segs[i][1]};
            for (int side = 0; side < 2; ++side) {
                bool grew = true;
                while (grew) {
                    grew = false;
                    Vec2 tip = line.back();
                    auto range = ends.equal_range(qkey(tip));
                    for (auto it = range.first; it != range.second; ++it) {
                        int j = it->second;
                        if (used[j]) continue;
                        used[j] = true;
                        Vec2 a = segs[j][0], b = segs[j][1];
                        line.push_back(qkey(a) == qkey(tip) ? b : a);
                        grew = true;
                        break;
                    }
                }
                std::reverse(line.begin(), line.end());
            }
            if (line.front().dot(dir) > line.back().dot(dir))
                std::reverse(line.begin(), line.end());
            set.polylines.push_back(std::move(line));
        }
        // order polylines deterministically
        std::sort(set.polylines.begin(), set.polylines.end(),
                  [&](const auto& a, const auto& b) {
                      Vec2 pa = a.front(), pb = b.front();
                      return std::make_pair(pa.x, pa.y) < std::make_pair(pb.x, pb.y);
                  });
        out.push_back(std::move(set));
    }
    return out;
}

}  // namespace isosys
