#include "isosys/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isosys {

namespace {

constexpr double kQuantum = 1e-9;

// injective for coordinates within +-2 at the chosen quantum
uint64_t quantize(Vec2 p) {
    auto q = [](double v) -> uint64_t {
        int64_t r = std::llround(v / kQuantum);
        return static_cast<uint64_t>(r + (int64_t{1} << 31));
    };
    return (q(p.x) << 32) | (q(p.y) & 0xffffffffULL);
}

struct MeshBuilder {
    Mesh mesh;
    std::unordered_map<uint64_t, int> vmap;

    int add_vertex(Vec2 p) {
        uint64_t key = quantize(p);
        auto it = vmap.find(key);
        if (it != vmap.end()) return it->second;
        int id = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(p);
        vmap.emplace(key, id);
        return id;
    }

    void add_plaquette(int a, int b, int c) { mesh.plaquettes.push_back({a, b, c}); }
};

}  // namespace

Mesh finalize_mesh(Mesh m) {
    m.centroids.clear();
    m.areas.clear();
    m.grad_coeff.clear();
    m.centroids.reserve(m.plaquettes.size());
    m.areas.reserve(m.plaquettes.size());
    m.grad_coeff.reserve(m.plaquettes.size());
    for (const auto& t : m.plaquettes) {
        Vec2 p1 = m.vertices[t[0]], p2 = m.vertices[t[1]], p3 = m.vertices[t[2]];
        m.centroids.push_back({(p1.x + p2.x + p3.x) / 3.0, (p1.y + p2.y + p3.y) / 3.0});
        Vec2 e12 = p2 - p1, e13 = p3 - p1;
        double det = e12.cross(e13);
        m.areas.push_back(std::abs(det) / 2.0);
        // gradient of the affine interpolant: solve [e12; e13] g = [f2-f1; f3-f1]
        Vec2 c2{e13.y / det, -e13.x / det};   // coefficient of f2-f1
        Vec2 c3{-e12.y / det, e12.x / det};   // coefficient of f3-f1
        m.grad_coeff.push_back({Vec2{-(c2.x + c3.x), -(c2.y + c3.y)}, c2, c3});
    }
    m.vertex_lookup_.clear();
    for (int i = 0; i < m.vertex_count(); ++i) m.vertex_lookup_[quantize(m.vertices[i])] = i;
    m.centroid_lookup_.clear();
    for (int i = 0; i < m.plaquette_count(); ++i) m.centroid_lookup_[quantize(m.centroids[i])] = i;
    return m;
}

int Mesh::find_vertex(Vec2 p) const {
    auto it = vertex_lookup_.find(quantize(p));
    return it == vertex_lookup_.end() ? -1 : it->second;
}

int Mesh::find_centroid(Vec2 p) const {
    auto it = centroid_lookup_.find(quantize(p));
    return it == centroid_lookup_.end() ? -1 : it->second;
}

Mesh Mesh::scaled(double factor) const {
    Mesh m = *this;
    for (auto& v : m.vertices) v = v * factor;
    return finalize_mesh(std::move(m));
}

Mesh build_hexagon_mesh(int Nc) {
    if (Nc < 1) throw std::invalid_argument("build_hexagon_mesh: N_c must be >= 1");
    MeshBuilder b;
    b.mesh.n = 3;
    b.mesh.resolution = Nc;
    b.mesh.scheme = MeshScheme::HexagonParallelogram;
    const Vec2 u{1.0 / Nc, -1.0 / (std::sqrt(3.0) * Nc)};
    const Vec2 v{0.0, 2.0 / (std::sqrt(3.0) * Nc)};
    auto at = [&](int i, int j) { return b.add_vertex({i * u.x + j * v.x, i * u.y + j * v.y}); };
    for (int i = 0; i < Nc; ++i) {
        for (int j = 0; j < Nc; ++j) {
            // each cell splits along the short diagonal into two equilateral plaquettes;
            // centroid labels [i+1, 2j+1] (right of vertex (i+1,j+1)) and [i+1, 2j+2]
            b.add_plaquette(at(i, j), at(i + 1, j), at(i + 1, j + 1));
            b.add_plaquette(at(i, j), at(i + 1, j + 1), at(i, j + 1));
        }
    }
    return finalize_mesh(std::move(b.mesh));
}

Mesh build_polygon_mesh(int n, int Nc) {
    if (n < 3) throw std::invalid_argument("build_polygon_mesh: n must be >= 3");
    if (Nc < 1) throw std::invalid_argument("build_polygon_mesh: N_c must be >= 1");
    MeshBuilder b;
    b.mesh.n = n;
    b.mesh.resolution = Nc;
    b.mesh.scheme = MeshScheme::GeneralSimilar;

    const double h = 0.5 * std::tan(M_PI / (2.0 * n));
    // T_2n lattice: vertex (i,j), i=1..Nc+1, j=1..i
    std::vector<Vec2> tverts;
    auto tv = [&](int i, int j) { return Vec2{(i - 1) * 0.5 / Nc, (j - 1) * h / Nc}; };

    // isometry g_k mapping T_0 onto the k-th copy tiling Q_2n
    auto iso = [&](int k) -> Mat2 {
        Mat2 rot = Mat2::rotation((k / 2) * M_PI / n);
        if (k % 2 == 0) return rot;
        double a = M_PI / (2.0 * n);
        Mat2 refl{std::cos(2 * a), std::sin(2 * a), std::sin(2 * a), -std::cos(2 * a)};
        return rot.compose(refl);
    };

    for (int k = 0; k < n; ++k) {
        Mat2 g = iso(k);
        for (int i = 1; i <= Nc; ++i) {
            for (int j = 1; j <= i; ++j) {
                // lower plaquette [i, 2j-1], upper plaquette [i, 2j]
                int a0 = b.add_vertex(g.apply(tv(i, j)));
                int a1 = b.add_vertex(g.apply(tv(i + 1, j)));
                int a2 = b.add_vertex(g.apply(tv(i + 1, j + 1)));
                b.add_plaquette(a0, a1, a2);
                if (j <= i - 1) {
                    int a3 = b.add_vertex(g.apply(tv(i, j + 1)));
                    b.add_plaquette(a0, a2, a3);
                }
            }
        }
    }
    return finalize_mesh(std::move(b.mesh));
}

void classify_boundary(Mesh& mesh, int n) {
    const double tol = 1e-10;
    const double h = 0.5 * std::tan(M_PI / (2.0 * n));
    mesh.vertex_tags.assign(mesh.vertices.size(), kInterior);
    for (int i = 0; i < mesh.vertex_count(); ++i) {
        Vec2 p = mesh.vertices[i];
        uint8_t t = kInterior;
        if (std::abs(p.x - 0.5) < tol && p.y > -tol && p.y < h + tol) t |= kEdgeE1Tilde;
        if (std::abs(p.x) < tol) t |= kYAxis;
        if (std::abs(p.y) < tol && p.x > -tol && p.x < 0.5 + tol) t |= kXAxis;
        for (int k = 1; k < 2 * n; ++k) {
            double a = k * M_PI / n;
            if (std::abs(p.x * std::cos(a) + p.y * std::sin(a) - 0.5) < tol) {
                t |= kOtherPolygonEdge;
                break;
            }
        }
        if (std::abs(p.x - 0.5) < tol && std::abs(p.y - h) < tol) t |= kApex;
        if (std::abs(p.x) < tol && std::abs(p.y) < tol) t |= kOrigin;
        mesh.vertex_tags[i] = t;
    }
}

Mesh make_domain_mesh(int n, int Nc, MeshScheme scheme) {
    Mesh mesh;
    if (scheme == MeshScheme::HexagonParallelogram) {
        if (n != 3) throw std::invalid_argument("hexagon scheme is specific to n = 3");
        if (Nc % 2 != 0) throw std::invalid_argument("hexagon scheme requires even N_c");
        mesh = build_hexagon_mesh(Nc).scaled(0.5);
        mesh.n = 3;
        mesh.resolution = Nc;
        // assembly region: the 60-degree kite sector [-30, 30), a fundamental
        // domain of the rotation subgroup; the lattice tiles it exactly
        const double s3 = std::sqrt(3.0);
        for (int t = 0; t < mesh.plaquette_count(); ++t) {
            Vec2 c = mesh.centroids[t];
            if (c.y >= -c.x / s3 - 1e-12 && c.y < c.x / s3 - 1e-12) mesh.region.push_back(t);
        }
        mesh.region_weight = 2.0 * n;
    } else {
        mesh = build_polygon_mesh(n, Nc);
        // region: the first N_c^2 plaquettes are exactly T_2n
        mesh.region.resize(Nc * Nc);
        for (int t = 0; t < Nc * Nc; ++t) mesh.region[t] = t;
        mesh.region_weight = 4.0 * n;
    }
    classify_boundary(mesh, n);
    return mesh;
}

std::vector<Vec2> gradient(const Mesh& mesh, const ScalarField& field) {
    if (field.attachment != ScalarField::Attachment::Vertices || field.mesh != &mesh)
        throw std::invalid_argument("gradient: field must be attached to this mesh's vertices");
    std::vector<Vec2> g(mesh.plaquettes.size());
    for (int t = 0; t < mesh.plaquette_count(); ++t) {
        const auto& plq = mesh.plaquettes[t];
        const auto& co = mesh.grad_coeff[t];
        Vec2 acc{0.0, 0.0};
        for (int k = 0; k < 3; ++k) acc = acc + co[k] * field.values[plq[k]];
        g[t] = acc;
    }
    return g;
}

std::array<PullbackVertex, 3> band_pullback(const Mesh& mesh, int plaquette, int alpha,
                                            FieldKind kind) {
    const int n = mesh.n;
    if (alpha < 1 || alpha > n) throw std::invalid_argument("band_pullback: alpha out of range");
    const double theta = (alpha - 1) * M_PI / n;
    const Mat2 rot = Mat2::rotation(-theta);
    const Vec2 wc = rot.apply(mesh.centroids[plaquette]);
    const bool branch_up = wc.y >= -kFoldTol;
    std::array<PullbackVertex, 3> out;
    for (int k = 0; k < 3; ++k) {
        int vid = mesh.plaquettes[plaquette][k];
        Vec2 w = rot.apply(mesh.vertices[vid]);
        FoldedPoint f = fold_to_quadrant(w, kind);
        int target = mesh.find_vertex(f.point);
        if (target < 0) throw std::runtime_error("band_pullback: folded vertex not in mesh");
        double jump = 0.0;
        if (kind == FieldKind::Dual) {
            // smooth branch continuation across the x-axis cut: phi below the
            // cut, seen from above, is nu - phi1(mirror); and vice versa
            bool above = w.y >= -kFoldTol;
            if (branch_up && !above) jump = 1.0;
            if (!branch_up && above) jump = -1.0;
        }
        out[k] = {target, f.sign, jump};
    }
    return out;
}

double dual_rho_at(const Mesh& mesh, int plaquette, const std::vector<double>& phi1, double nu,
                   int n) {
    double rho = 0.0;
    const auto& co = mesh.grad_coeff[plaquette];
    for (int alpha = 1; alpha <= n; ++alpha) {
        auto pv = band_pullback(mesh, plaquette, alpha, FieldKind::Dual);
        Vec2 g{0.0, 0.0};
        for (int k = 0; k < 3; ++k) {
            double val = pv[k].sign * phi1[pv[k].vertex] + pv[k].jump * nu;
            g = g + co[k] * val;
        }
        rho += g.norm();
    }
    return rho;
}

CentroidMap centroid_symmetry_table(const Mesh& mesh, int alpha, FieldKind kind) {
    CentroidMap map;
    map.target.reserve(mesh.region.size());
    map.sign.reserve(mesh.region.size());
    for (int t : mesh.region) {
        FoldedPoint f = map_to_fundamental(mesh.centroids[t], alpha, kind, mesh.n);
        int target = mesh.find_centroid(f.point);
        if (target < 0) throw std::runtime_error("centroid_symmetry_table: image not a centroid");
        map.target.push_back(target);
        map.sign.push_back(f.sign);
    }
    return map;
}

std::string Mesh::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\n  \"schema_version\": 1,\n  \"n\": " << n << ",\n  \"resolution\": " << resolution
       << ",\n  \"scheme\": \""
       << (scheme == MeshScheme::GeneralSimilar ? "general-similar-triangles"
                                                : "hexagon-parallelogram")
       << "\",\n  \"vertices\": [";
    for (size_t i = 0; i < vertices.size(); ++i) {
        os << (i ? "," : "") << "[" << vertices[i].x << "," << vertices[i].y << "]";
    }
    os << "],\n  \"triangles\": [";
    for (size_t i = 0; i < plaquettes.size(); ++i) {
        os << (i ? "," : "") << "[" << plaquettes[i][0] << "," << plaquettes[i][1] << ","
           << plaquettes[i][2] << "]";
    }
    os << "],\n  \"tags\": [";
    for (size_t i = 0; i < vertex_tags.size(); ++i)
        os << (i ? "," : "") << static_cast<int>(vertex_tags.empty() ? 0 : vertex_tags[i]);
    os << "]\n}\n";
    return os.str();
}

}  // namespace isosys
