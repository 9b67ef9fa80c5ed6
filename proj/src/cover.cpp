#include "z2f/cover.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace z2f {

namespace {

// cells of the complex listed per dimension as vertex tuples
std::vector<std::vector<int>> cells_of_dim(const CellComplex& c, int k) {
    std::vector<std::vector<int>> out;
    if (k == 0)
        for (int v = 0; v < c.n_vertices; ++v) out.push_back({v});
    else if (k == 1)
        for (auto& e : c.edges) out.push_back({e[0], e[1]});
    else if (k == 2)
        for (auto& t : c.triangles) out.push_back({t[0], t[1], t[2]});
    else
        for (auto& t : c.tets) out.push_back({t[0], t[1], t[2], t[3]});
    return out;
}

int lookup_cell(const CellComplex& c, const std::vector<int>& vs) {
    switch (vs.size()) {
        case 1: return vs[0];
        case 2: return c.edge_index(vs[0], vs[1]);
        case 3: return c.triangle_index({vs[0], vs[1], vs[2]});
        default: return c.tet_index({vs[0], vs[1], vs[2], vs[3]});
    }
}

}  // namespace

BranchedCover BranchedCover::identity(const CellComplex& c) {
    BranchedCover out;
    out.complex = c;
    out.base = c;
    out.locus.dimension = c.dimension;
    out.trivial = true;
    for (int k = 0; k <= 3; ++k) {
        int n = c.cell_count(k);
        out.to_base[k].resize(n);
        std::iota(out.to_base[k].begin(), out.to_base[k].end(), 0);
        out.tau[k] = out.to_base[k];
        out.sheet[k].assign(n, 0);
        out.branch[k].assign(n, 0);
        out.preimages[k].assign(n, {0, -1});
        for (int i = 0; i < n; ++i) out.preimages[k][i] = {i, -1};
    }
    out.cocycle.values.assign(c.edges.size(), 0);
    return out;
}

void BranchedCover::check_structure() const {
    for (int k = 0; k <= 3; ++k) {
        int n = complex.cell_count(k);
        for (int i = 0; i < n; ++i) {
            if (tau[k][tau[k][i]] != i) fail(ErrorCode::InputError, "tau is not an involution");
            if (to_base[k][tau[k][i]] != to_base[k][i])
                fail(ErrorCode::InputError, "p∘tau differs from p");
            if ((tau[k][i] == i) != (branch[k][i] != 0))
                fail(ErrorCode::InputError, "fixed cells of tau differ from branch cells");
        }
    }
    if (!trivial) {
        long long chi_z = 0;
        if (locus.dimension == 3) {
            // a disjoint union of circles has chi = 0
            chi_z = 0;
        } else {
            chi_z = (long long)locus.components.size();
        }
        if (complex.euler_characteristic() != 2 * base.euler_characteristic() - chi_z)
            fail(ErrorCode::InputError, "Euler characteristic of the cover is wrong");
    }
}

BranchedCover build_branched_cover(const CellComplex& complex, const SingularLocus& locus,
                                   const MonodromyCocycle& cocycle) {
    locus.validate(complex);
    cocycle.validate(complex, locus);

    BranchedCover out;
    out.base = complex;
    out.locus = locus;
    out.cocycle = cocycle;

    // a cell copy needs a vertex off the locus to be distinguishable from
    // its partner; otherwise subdivide the whole base once
    auto needs_subdivision = [](const CellComplex& c, const SingularLocus& z) {
        auto vmask = z.vertex_mask(c);
        auto emask = z.edge_mask(c);
        for (int e = 0; e < (int)c.edges.size(); ++e)
            if (!emask[e] && vmask[c.edges[e][0]] && vmask[c.edges[e][1]]) return true;
        for (auto& t : c.triangles)
            if (vmask[t[0]] && vmask[t[1]] && vmask[t[2]]) return true;
        for (auto& t : c.tets)
            if (vmask[t[0]] && vmask[t[1]] && vmask[t[2]] && vmask[t[3]]) return true;
        return false;
    };

    if (needs_subdivision(complex, locus)) {
        auto sub = barycentric_subdivision(complex);
        SingularLocus z2;
        z2.dimension = locus.dimension;
        if (locus.dimension == 3) {
            for (auto& comp : locus.components) {
                std::vector<int> nc;
                for (int e : comp) {
                    int mid = sub.new_vertex_of_cell[1][e];
                    nc.push_back(sub.complex.edge_index(complex.edges[e][0], mid));
                    nc.push_back(sub.complex.edge_index(mid, complex.edges[e][1]));
                }
                z2.components.push_back(nc);
            }
        } else {
            z2.components = locus.components;  // vertex ids persist
        }
        out.base = sub.complex;
        out.locus = z2;
        out.locus.validate(out.base);
        out.cocycle = meridian_cocycle(out.base, out.locus);
        out.base_subdivided = true;
    }

    const CellComplex& B = out.base;
    const SingularLocus& Z = out.locus;
    const auto& eta = out.cocycle.values;
    auto vmask = Z.vertex_mask(B);
    auto emask = Z.edge_mask(B);

    // vertex layout: branch vertices single, others doubled
    int nv = 0;
    std::vector<std::array<int, 2>> vcopy(B.n_vertices, {-1, -1});
    for (int v = 0; v < B.n_vertices; ++v) {
        if (vmask[v])
            vcopy[v] = {nv++, -1};
        else {
            vcopy[v] = {nv, nv + 1};
            nv += 2;
        }
    }

    // sheet transport inside a simplex, measured from its anchor vertex
    auto anchor = [&](const std::vector<int>& vs) {
        for (int v : vs)
            if (!vmask[v]) return v;
        return -1;
    };
    auto transport = [&](int from, int to) -> int {
        if (from == to || vmask[to]) return 0;
        int e = B.edge_index(from, to);
        return eta[e];
    };
    auto copy_of = [&](const std::vector<int>& vs, int s) {
        int r = anchor(vs);
        std::vector<int> out_vs;
        for (int v : vs) {
            if (vmask[v])
                out_vs.push_back(vcopy[v][0]);
            else
                out_vs.push_back(vcopy[v][s ^ transport(r, v)]);
        }
        return out_vs;
    };

    int dim = B.dimension;
    auto tops = cells_of_dim(B, dim);
    std::vector<std::vector<int>> cover_tops;
    for (auto& cell : tops) {
        cover_tops.push_back(copy_of(cell, 0));
        cover_tops.push_back(copy_of(cell, 1));
    }
    out.complex = CellComplex::from_top_cells(dim, nv, cover_tops);

    // maps per dimension: locate every cover cell over its base cell
    std::vector<int> base_of_vertex(nv, -1);
    std::vector<int8_t> sheet_of_vertex(nv, 0);
    for (int v = 0; v < B.n_vertices; ++v) {
        base_of_vertex[vcopy[v][0]] = v;
        if (vcopy[v][1] >= 0) {
            base_of_vertex[vcopy[v][1]] = v;
            sheet_of_vertex[vcopy[v][0]] = 0;
            sheet_of_vertex[vcopy[v][1]] = 1;
        }
    }
    for (int k = 0; k <= 3; ++k) {
        out.to_base[k].assign(out.complex.cell_count(k), -1);
        out.sheet[k].assign(out.complex.cell_count(k), 0);
        out.tau[k].assign(out.complex.cell_count(k), -1);
        out.branch[k].assign(out.complex.cell_count(k), 0);
        out.preimages[k].assign(B.cell_count(k), {-1, -1});
    }
    for (int v = 0; v < nv; ++v) {
        int b = base_of_vertex[v];
        out.to_base[0][v] = b;
        out.sheet[0][v] = sheet_of_vertex[v];
        out.branch[0][v] = vmask[b];
        out.tau[0][v] = vmask[b] ? v : vcopy[b][1 - sheet_of_vertex[v]];
    }
    for (int v = 0; v < B.n_vertices; ++v) out.preimages[0][v] = vcopy[v];

    for (int k = 1; k <= dim; ++k) {
        auto base_cells = cells_of_dim(B, k);
        for (int bc = 0; bc < (int)base_cells.size(); ++bc) {
            const auto& vs = base_cells[bc];
            bool in_z = (k == 1 && emask[bc]);
            if (in_z) {
                auto cv = copy_of(vs, 0);
                int id = lookup_cell(out.complex, cv);
                if (id < 0) fail(ErrorCode::InputError, "lost branch cell in the cover");
                out.to_base[k][id] = bc;
                out.sheet[k][id] = 0;
                out.branch[k][id] = 1;
                out.tau[k][id] = id;
                out.preimages[k][bc] = {id, -1};
                continue;
            }
            int id0 = lookup_cell(out.complex, copy_of(vs, 0));
            int id1 = lookup_cell(out.complex, copy_of(vs, 1));
            if (id0 < 0 || id1 < 0 || id0 == id1)
                fail(ErrorCode::InputError, "cover cell copies collide; base not separable");
            out.to_base[k][id0] = bc;
            out.to_base[k][id1] = bc;
            out.sheet[k][id0] = 0;
            out.sheet[k][id1] = 1;
            out.tau[k][id0] = id1;
            out.tau[k][id1] = id0;
            out.preimages[k][bc] = {id0, id1};
        }
    }
    out.check_structure();
    return out;
}

std::vector<double> lift_base_cochain(const BranchedCover& cover,
                                      const std::vector<double>& base_values) {
    if (base_values.size() != cover.base.edges.size())
        fail(ErrorCode::InputError, "base cochain length mismatch");
    if (cover.trivial) return base_values;
    std::vector<double> out(cover.complex.edges.size(), 0.0);
    for (int e = 0; e < (int)cover.complex.edges.size(); ++e) {
        if (cover.branch[1][e]) continue;
        double v = base_values[cover.to_base[1][e]];
        out[e] = cover.sheet[1][e] ? -v : v;
    }
    return out;
}

std::vector<double> push_down_cochain(const BranchedCover& cover,
                                      const std::vector<double>& cover_values) {
    if (cover_values.size() != cover.complex.edges.size())
        fail(ErrorCode::InputError, "cover cochain length mismatch");
    if (cover.trivial) return cover_values;
    std::vector<double> out(cover.base.edges.size(), 0.0);
    for (int be = 0; be < (int)cover.base.edges.size(); ++be) {
        int pre = cover.preimages[1][be][0];
        out[be] = cover_values[pre];
    }
    return out;
}

std::vector<double> antiinvariant_project(const BranchedCover& cover,
                                          const std::vector<double>& values) {
    std::vector<double> out(values.size());
    for (int e = 0; e < (int)values.size(); ++e) out[e] = (values[e] - values[cover.tau[1][e]]) / 2.0;
    return out;
}

AntiInvariantBasis antiinvariant_cohomology(const BranchedCover& cover) {
    AntiInvariantBasis out;
    if (cover.trivial) return out;
    const CellComplex& B = cover.base;
    auto emask = cover.locus.edge_mask(B);
    auto vmask = cover.locus.vertex_mask(B);

    // twisted coboundary relations read off the sheet-0 copy of each base
    // triangle: sum of oriented edge values with sheet signs vanishes
    struct Entry {
        int edge;
        int coef;
    };
    std::vector<std::vector<Entry>> rows(B.triangles.size());
    for (int bt = 0; bt < (int)B.triangles.size(); ++bt) {
        int ct = cover.preimages[2][bt][0];
        const auto& tri = cover.complex.triangles[ct];
        int pairs[3][2] = {{tri[0], tri[1]}, {tri[1], tri[2]}, {tri[2], tri[0]}};
        for (auto& [a, b] : pairs) {
            auto [ce, sgn] = cover.complex.edge_lookup(a, b);
            if (cover.branch[1][ce]) continue;
            int be = cover.to_base[1][ce];
            int coef = sgn * (cover.sheet[1][ce] ? -1 : 1);
            rows[bt].push_back({be, coef});
        }
    }

    // gauge away a spanning forest rooted at the locus, keep chord unknowns
    std::vector<char> in_tree(B.edges.size(), 0);
    {
        std::vector<char> seen(B.n_vertices, 0);
        std::vector<int> queue;
        for (int v = 0; v < B.n_vertices; ++v)
            if (vmask[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
        const auto& ve = B.vertex_edges();
        size_t qi = 0;
        auto sweep = [&]() {
            while (qi < queue.size()) {
                int v = queue[qi++];
                for (int e : ve[v]) {
                    if (emask[e]) continue;
                    int w = B.edges[e][0] == v ? B.edges[e][1] : B.edges[e][0];
                    if (!seen[w]) {
                        seen[w] = 1;
                        in_tree[e] = 1;
                        queue.push_back(w);
                    }
                }
            }
        };
        sweep();
        for (int v = 0; v < B.n_vertices; ++v)
            if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
                sweep();
            }
    }
    std::vector<int> chord_of_edge(B.edges.size(), -1);
    std::vector<int> chord_edges;
    for (int e = 0; e < (int)B.edges.size(); ++e)
        if (!emask[e] && !in_tree[e]) {
            chord_of_edge[e] = (int)chord_edges.size();
            chord_edges.push_back(e);
        }
    SparseZ T((int)rows.size(), (int)chord_edges.size());
    for (int r = 0; r < (int)rows.size(); ++r)
        for (auto& ent : rows[r])
            if (chord_of_edge[ent.edge] >= 0) T.add(r, chord_of_edge[ent.edge], ent.coef);
    auto kernel = integer_kernel(std::move(T));

    for (auto& vec : kernel) {
        std::vector<long long> base_coch(B.edges.size(), 0);
        for (auto& [ci, v] : vec) {
            if (v > (std::numeric_limits<long long>::max)() ||
                v < (std::numeric_limits<long long>::min)())
                fail(ErrorCode::ArithmeticError, "twisted representative entry overflows");
            base_coch[chord_edges[ci]] = (long long)v;
        }
        std::vector<long long> cov(cover.complex.edges.size(), 0);
        for (int e = 0; e < (int)cover.complex.edges.size(); ++e) {
            if (cover.branch[1][e]) continue;
            long long v = base_coch[cover.to_base[1][e]];
            cov[e] = cover.sheet[1][e] ? -v : v;
        }
        out.base_cochains.push_back(std::move(base_coch));
        out.cover_cochains.push_back(std::move(cov));
    }

    // structural checks: closed and anti-invariant, exactly
    for (auto& cov : out.cover_cochains) {
        Cochain q{1, std::vector<double>(cov.begin(), cov.end())};
        if (coboundary_max(cover.complex, q) != 0.0)
            fail(ErrorCode::ArithmeticError, "anti-invariant representative is not closed");
        for (int e = 0; e < (int)cov.size(); ++e)
            if (cov[cover.tau[1][e]] != -cov[e])
                fail(ErrorCode::ArithmeticError, "representative is not anti-invariant");
    }
    return out;
}

ObstructionReport haydys_obstruction(const BranchedCover& cover, const SingularLocus& locus,
                                     bool base_is_rhs) {
    ObstructionReport rep;
    rep.component_count = (int)locus.components.size();
    rep.b1_cover = homology(cover.complex).betti[1];
    rep.passes = rep.b1_cover > 0;
    if (rep.passes)
        rep.notes = "branched cover carries odd classes (b1 = " + std::to_string(rep.b1_cover) + ")";
    else
        rep.notes = "no odd classes: b1 of the branched cover vanishes";
    if (base_is_rhs && rep.component_count < 2)
        rep.notes += "; single-component locus cannot support a two-valued harmonic form "
                     "on a rational homology sphere";
    return rep;
}

}  // namespace z2f
