#pragma once

#include <vector>

#include "z2f/cell_complex.hpp"

namespace z2f {

// Codimension-2 singular locus: disjoint simple edge-cycles in a 3-complex,
// a set of vertices in a 2-complex. Components are labelled by position.
struct SingularLocus {
    int dimension = 3;                        // dimension of the ambient complex
    std::vector<std::vector<int>> components; // edge ids (3d) or vertex ids (2d)

    // derived views
    std::vector<int> all_cells() const;

    // every vertex incident to a locus cell
    std::vector<char> vertex_mask(const CellComplex& c) const;
    std::vector<char> edge_mask(const CellComplex& c) const;  // edges in the locus
    // component id per vertex (-1 off the locus)
    std::vector<int> vertex_component(const CellComplex& c) const;

    void validate(const CellComplex& c) const;  // loops, disjointness, fullness
};

// Z/2 transition data for the branched real line bundle on the complement.
struct MonodromyCocycle {
    std::vector<uint8_t> values;  // per edge of the base; locus edges hold 0

    void validate(const CellComplex& c, const SingularLocus& z) const;
};

// Meridian loop (vertex cycle) around a locus cell: the link cycle of an
// edge (3d) or of a vertex (2d). Cells of the loop must avoid the locus.
std::vector<std::vector<int>> meridian_loops(const CellComplex& c, const SingularLocus& z);

// Solve for a valid cocycle; throws NoLineBundle when the topological
// condition fails. `pinned` optionally fixes values on chosen edges.
MonodromyCocycle meridian_cocycle(const CellComplex& c, const SingularLocus& z,
                                  const std::vector<std::pair<int, uint8_t>>& pinned = {});

}  // namespace z2f
