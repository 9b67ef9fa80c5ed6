#pragma once

#include <vector>

#include "z2f/cell_complex.hpp"
#include "z2f/locus.hpp"

namespace z2f {
namespace presets {

// closed surfaces
CellComplex tetrahedron_sphere();     // boundary of a 3-simplex
CellComplex icosahedron();            // 12-vertex S^2 with coordinates
CellComplex torus_grid(int n);        // n x n unit-square torus, n >= 3
CellComplex seven_vertex_torus();     // minimal 7-vertex torus

// closed 3-manifolds
CellComplex boundary_4_simplex();     // 5-vertex S^3
CellComplex join_sphere3(int m, int n);  // join of an m-gon and an n-gon

// S^3 with an embedded locus
struct LocusPreset {
    CellComplex complex;
    SingularLocus locus;
};
LocusPreset s3_unknot();          // core polygon of join(3,4)
LocusPreset s3_hopf_link();       // both cores of barycentric join(3,3)
LocusPreset s3_unlink(int k);     // k split unknots, k in {2,3}

// sphere with two antipodal branch vertices (icosahedron)
LocusPreset sphere_two_points();

}  // namespace presets
}  // namespace z2f
