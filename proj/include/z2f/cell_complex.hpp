#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "z2f/errors.hpp"
#include "z2f/intmat.hpp"

namespace z2f {

// Oriented simplicial complex modelling a closed oriented 2- or 3-manifold.
// Top cells keep the orientation they were given; lower cells are stored
// with ascending vertex order and implicit +1 orientation. Immutable after
// construction; every constructor validates the manifold conditions.
class CellComplex {
  public:
    int dimension = 2;
    int n_vertices = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::array<int, 4>> tets;
    // optional embedding, used by cotangent weights and generators
    std::vector<std::array<double, 3>> positions;

    // Build from top-dimensional cells; faces are generated sorted.
    static CellComplex from_top_cells(int dimension, int n_vertices,
                                      const std::vector<std::vector<int>>& top,
                                      std::vector<std::array<double, 3>> positions = {},
                                      bool validate_manifold = true);

    int cell_count(int k) const;
    int top_dim_count() const { return dimension == 2 ? (int)triangles.size() : (int)tets.size(); }

    // index of the edge with vertex set {a,b}; sign +1 if stored as (a,b)
    std::pair<int, int> edge_lookup(int a, int b) const;
    int edge_index(int a, int b) const;  // -1 if absent
    int triangle_index(std::array<int, 3> t) const;
    int tet_index(std::array<int, 4> t) const;

    // integer boundary matrix of degree k (rows: (k-1)-cells, cols: k-cells)
    SparseZ boundary_matrix(int k) const;

    long long euler_characteristic() const;
    int component_count() const;
    std::vector<int> vertex_components() const;

    void validate() const;  // throws Error on violation

    // adjacency helpers (built lazily, cached)
    const std::vector<std::vector<int>>& vertex_edges() const;       // edges at a vertex
    const std::vector<std::vector<int>>& edge_triangles() const;     // triangles at an edge
    const std::vector<std::vector<int>>& triangle_tets() const;      // tets at a triangle
    const std::vector<std::vector<int>>& vertex_triangles() const;
    const std::vector<std::vector<int>>& vertex_tets() const;

    // link of a vertex in a 2-complex as one closed vertex cycle, or nullopt
    std::optional<std::vector<int>> vertex_link_cycle(int v) const;
    // link of an edge in a 3-complex as one closed vertex cycle, or nullopt
    std::optional<std::vector<int>> edge_link_cycle(int e) const;

  private:
    mutable std::map<std::pair<int, int>, int> edge_map_;
    mutable std::map<std::array<int, 3>, int> tri_map_;
    mutable std::map<std::array<int, 4>, int> tet_map_;
    mutable std::vector<std::vector<int>> v_edges_, e_tris_, t_tets_, v_tris_, v_tets_;
    void build_maps() const;
};

struct Cochain {
    int degree = 1;
    std::vector<double> values;
};

struct HomologySummary {
    std::vector<int> betti;                    // degree 0..dim
    std::vector<std::vector<BigInt>> torsion;  // invariant factors per degree
};

HomologySummary homology(const CellComplex& c);
bool is_rational_homology_sphere(const CellComplex& c);

// Integer 1-cycle as signed edge list.
using Cycle = std::vector<std::pair<int, BigInt>>;

struct CocycleBasis {
    std::vector<std::vector<BigInt>> cochains;  // closed integer 1-cochains, one per b1
    std::vector<Cycle> cycles;                  // homology cycle basis, same count
    std::vector<std::vector<BigInt>> period_matrix;
};

// Closed integer 1-cochains spanning H^1 mod torsion, with a cycle basis on
// which their period matrix is unimodular.
CocycleBasis cocycle_basis(const CellComplex& c);

// All fundamental cycles of a spanning forest (chord + tree path); spans the
// cycle space. Used for exact rationality bookkeeping.
std::vector<Cycle> fundamental_cycles(const CellComplex& c);

// Signed sum of a closed cochain over integer cycles. Throws NotClosed.
std::vector<double> periods(const CellComplex& c, const Cochain& cochain,
                            const std::vector<Cycle>& cycles);

double coboundary_max(const CellComplex& c, const Cochain& cochain);

// --- mesh surgery -------------------------------------------------------

// Full barycentric subdivision. new_vertex_of_cell maps (dim, cell id) of
// the input to the new vertex sitting at its barycenter.
struct Subdivision {
    CellComplex complex;
    std::vector<std::vector<int>> new_vertex_of_cell;  // [dim][cell] -> vertex
};
Subdivision barycentric_subdivision(const CellComplex& c);

// Split the listed triangles at their centroid (3-complexes: incident tets
// split in place). Returns the new complex and the center vertex per split.
struct TriangleSplit {
    CellComplex complex;
    std::vector<int> center_vertex;
};
TriangleSplit split_triangles(const CellComplex& c, const std::vector<int>& tri_ids);

}  // namespace z2f
