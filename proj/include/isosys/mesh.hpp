#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "isosys/geometry.hpp"

namespace isosys {

enum class MeshScheme { GeneralSimilar, HexagonParallelogram };

// Per-vertex boundary tags (bitmask; a vertex on two curves carries both).
enum BoundaryTag : uint8_t {
    kInterior = 0,
    kEdgeE1Tilde = 1,      // x = +1/2
    kYAxis = 2,            // x = 0
    kXAxis = 4,            // y = 0, 0 <= x <= 1/2
    kOtherPolygonEdge = 8, // polygon boundary other than e1~
    kApex = 16,            // corner (1/2, h)
    kOrigin = 32,
};

struct ScalarField;

// Triangulated domain. Vertices/plaquettes are immutable after build; the
// gradient of a vertex field on plaquette t is sum_k grad_coeff[t][k]*f[v_k].
struct Mesh {
    int n = 0;
    int resolution = 0;  // N_c
    MeshScheme scheme = MeshScheme::GeneralSimilar;

    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> plaquettes;
    std::vector<Vec2> centroids;
    std::vector<double> areas;
    std::vector<std::array<Vec2, 3>> grad_coeff;
    std::vector<uint8_t> vertex_tags;  // filled by classify_boundary

    // Plaquettes of the assembly region (a fundamental sector that the mesh
    // tiles exactly) and the number of its dihedral images covering P_2n.
    std::vector<int> region;
    double region_weight = 0.0;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int plaquette_count() const { return static_cast<int>(plaquettes.size()); }

    int find_vertex(Vec2 p) const;    // -1 if absent (quantized lookup)
    int find_centroid(Vec2 p) const;  // -1 if absent

    Mesh scaled(double factor) const;
    std::string to_json() const;

  private:
    friend Mesh finalize_mesh(Mesh m);
    std::unordered_map<uint64_t, int> vertex_lookup_;
    std::unordered_map<uint64_t, int> centroid_lookup_;
};

// Appendix-style hexagon mesh: equilateral plaquettes tiling the parallelogram
// (0,0), (1,-1/sqrt3), (1,1/sqrt3), (0,2/sqrt3); 2 N_c^2 plaquettes. This is
// the apothem-1 presentation; scale by 1/2 for the canonical domain.
Mesh build_hexagon_mesh(int Nc);

// General scheme: T_2n split into N_c^2 similar triangles, reflected across
// the hypotenuse and rotated rigidly to tile Q_2n (n N_c^2 plaquettes).
Mesh build_polygon_mesh(int n, int Nc);

// Canonical-scale mesh with tags and assembly region selected, ready for
// program assembly. The hexagon scheme requires even N_c.
Mesh make_domain_mesh(int n, int Nc, MeshScheme scheme);

void classify_boundary(Mesh& mesh, int n);

struct ScalarField {
    enum class Attachment { Vertices, Centroids };
    Attachment attachment = Attachment::Vertices;
    std::vector<double> values;
    const Mesh* mesh = nullptr;

    static ScalarField on_vertices(const Mesh& m, double init = 0.0) {
        return {Attachment::Vertices, std::vector<double>(m.vertices.size(), init), &m};
    }
    static ScalarField on_centroids(const Mesh& m, double init = 0.0) {
        return {Attachment::Centroids, std::vector<double>(m.plaquettes.size(), init), &m};
    }
};

// Constant gradient of the affine interpolant, one Vec2 per plaquette.
std::vector<Vec2> gradient(const Mesh& mesh, const ScalarField& field);

// One folded vertex reference of a band pullback: the value of phi^alpha at a
// plaquette vertex is sign*phi1[vertex] + jump*nu (jump nonzero only for dual
// fields whose fold crossed the x-axis cut relative to the plaquette branch).
struct PullbackVertex {
    int vertex = -1;
    double sign = 1.0;
    double jump = 0.0;
};

// Pullback of band alpha onto one plaquette: per-vertex folded references.
// Gradients of phi^alpha on the plaquette use the plaquette's own grad_coeff
// applied to the pulled values; the result never includes the cut jump.
std::array<PullbackVertex, 3> band_pullback(const Mesh& mesh, int plaquette, int alpha,
                                            FieldKind kind);

// rho = sum_alpha |d phi^alpha| evaluated on one plaquette of a dual vertex
// field (values must satisfy the boundary ties already).
double dual_rho_at(const Mesh& mesh, int plaquette, const std::vector<double>& phi1, double nu,
                   int n);

// Symmetry permutation tables (spec mesh contract): for clean meshes every
// band maps centroids of the region bijectively onto mesh centroids.
struct CentroidMap {
    std::vector<int> target;   // centroid id per region plaquette
    std::vector<double> sign;  // phi^alpha sign, per region plaquette
};
CentroidMap centroid_symmetry_table(const Mesh& mesh, int alpha, FieldKind kind);

}  // namespace isosys
