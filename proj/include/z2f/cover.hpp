#pragma once

#include <array>
#include <string>
#include <vector>

#include "z2f/cell_complex.hpp"
#include "z2f/locus.hpp"

namespace z2f {

// 2-fold branched cover of `base` along `locus`, doubled cellwise with the
// monodromy cocycle as transition data. Cells over the locus have a single
// preimage fixed by the deck involution.
struct BranchedCover {
    CellComplex complex;  // the cover
    CellComplex base;     // base actually used (subdivided when needed)
    SingularLocus locus;  // on `base`
    MonodromyCocycle cocycle;
    bool base_subdivided = false;
    bool trivial = false;  // identity cover, for single-valued test inputs

    // per dimension 0..3, cover cell -> base cell
    std::array<std::vector<int>, 4> to_base;
    // per dimension, cover cell -> sheet label (branch cells carry 0)
    std::array<std::vector<int8_t>, 4> sheet;
    // per dimension, the deck involution on cells
    std::array<std::vector<int>, 4> tau;
    // per dimension, branch flag (fixed cells of tau)
    std::array<std::vector<char>, 4> branch;
    // per dimension, base cell -> preimages (second = -1 over the locus)
    std::array<std::vector<std::array<int, 2>>, 4> preimages;

    int tau_vertex(int v) const { return tau[0][v]; }
    int tau_edge(int e) const { return tau[1][e]; }
    bool is_branch_vertex(int v) const { return branch[0][v] != 0; }
    bool is_branch_edge(int e) const { return branch[1][e] != 0; }

    // identity cover over a complex (testing mode for single-valued forms)
    static BranchedCover identity(const CellComplex& c);

    void check_structure() const;  // asserts p∘tau=p, tau²=id, fixed set, chi
};

BranchedCover build_branched_cover(const CellComplex& complex, const SingularLocus& locus,
                                   const MonodromyCocycle& cocycle);

// pull a base edge cochain (sign data in the sheet-0 gauge) up to an
// anti-invariant cover cochain, and push back down
std::vector<double> lift_base_cochain(const BranchedCover& cover,
                                      const std::vector<double>& base_values);
std::vector<double> push_down_cochain(const BranchedCover& cover,
                                      const std::vector<double>& cover_values);

// anti-invariant part (sigma - tau*sigma)/2 of a cover 1-cochain
std::vector<double> antiinvariant_project(const BranchedCover& cover,
                                          const std::vector<double>& values);

// basis of the anti-invariant first cohomology, integer cochains on the
// cover obtained from twisted base representatives
struct AntiInvariantBasis {
    std::vector<std::vector<long long>> base_cochains;   // per base edge, sheet-0 gauge
    std::vector<std::vector<long long>> cover_cochains;  // lifted, per cover edge
    int dim() const { return (int)cover_cochains.size(); }
};
AntiInvariantBasis antiinvariant_cohomology(const BranchedCover& cover);

struct ObstructionReport {
    int b1_cover = 0;
    int component_count = 0;
    bool passes = false;
    std::string notes;
};
ObstructionReport haydys_obstruction(const BranchedCover& cover, const SingularLocus& locus,
                                     bool base_is_rhs);

}  // namespace z2f
