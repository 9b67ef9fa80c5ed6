#include "z2f/locus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "z2f/gf2.hpp"

namespace z2f {

std::vector<int> SingularLocus::all_cells() const {
    std::vector<int> out;
    for (auto& comp : components) out.insert(out.end(), comp.begin(), comp.end());
    return out;
}

std::vector<char> SingularLocus::vertex_mask(const CellComplex& c) const {
    std::vector<char> mask(c.n_vertices, 0);
    for (auto& comp : components)
        for (int cell : comp) {
            if (dimension == 2)
                mask[cell] = 1;
            else {
                mask[c.edges[cell][0]] = 1;
                mask[c.edges[cell][1]] = 1;
            }
        }
    return mask;
}

std::vector<char> SingularLocus::edge_mask(const CellComplex& c) const {
    std::vector<char> mask(c.edges.size(), 0);
    if (dimension == 3)
        for (auto& comp : components)
            for (int e : comp) mask[e] = 1;
    return mask;
}

std::vector<int> SingularLocus::vertex_component(const CellComplex& c) const {
    std::vector<int> comp(c.n_vertices, -1);
    for (int k = 0; k < (int)components.size(); ++k)
        for (int cell : components[k]) {
            if (dimension == 2)
                comp[cell] = k;
            else {
                comp[c.edges[cell][0]] = k;
                comp[c.edges[cell][1]] = k;
            }
        }
    return comp;
}

void SingularLocus::validate(const CellComplex& c) const {
    if (dimension != c.dimension)
        fail(ErrorCode::DimensionError, "locus dimension does not match the complex");
    if (dimension == 2) {
        std::set<int> seen;
        for (auto& comp : components) {
            if (comp.size() != 1)
                fail(ErrorCode::InputError, "2d locus components are single vertices");
            int v = comp[0];
            if (v < 0 || v >= c.n_vertices) fail(ErrorCode::InputError, "locus vertex out of range");
            if (!seen.insert(v).second) fail(ErrorCode::InputError, "repeated locus vertex");
        }
        return;
    }
    // 3d: each component a simple closed edge loop, components edge-disjoint
    std::set<int> seen_edges;
    auto vmask = vertex_mask(c);
    auto vcomp = vertex_component(c);
    for (auto& comp : components) {
        std::map<int, int> degree;
        for (int e : comp) {
            if (e < 0 || e >= (int)c.edges.size())
                fail(ErrorCode::InputError, "locus edge out of range");
            if (!seen_edges.insert(e).second) fail(ErrorCode::InputError, "repeated locus edge");
            degree[c.edges[e][0]]++;
            degree[c.edges[e][1]]++;
        }
        for (auto& [v, d] : degree)
            if (d != 2)
                fail(ErrorCode::InputError,
                     "locus component is not a simple closed loop at vertex " + std::to_string(v));
        // connectivity of the component
        std::map<int, std::vector<int>> adj;
        for (int e : comp) {
            adj[c.edges[e][0]].push_back(c.edges[e][1]);
            adj[c.edges[e][1]].push_back(c.edges[e][0]);
        }
        std::set<int> vis;
        std::vector<int> stack{adj.begin()->first};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (!vis.insert(v).second) continue;
            for (int w : adj[v]) stack.push_back(w);
        }
        if (vis.size() != adj.size())
            fail(ErrorCode::InputError, "locus component is not connected");
    }
    // components must not share vertices
    {
        std::map<int, int> owner;
        for (int k = 0; k < (int)components.size(); ++k)
            for (int e : components[k])
                for (int v : {c.edges[e][0], c.edges[e][1]}) {
                    auto it = owner.find(v);
                    if (it != owner.end() && it->second != k)
                        fail(ErrorCode::InputError, "locus components share a vertex");
                    owner[v] = k;
                }
    }
    // fullness: no off-locus cell with every face in the locus
    auto emask = edge_mask(c);
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        if (emask[e]) continue;
        if (vmask[c.edges[e][0]] && vmask[c.edges[e][1]])
            fail(ErrorCode::InputError,
                 "locus is not full: edge " + std::to_string(e) + " has both endpoints on it");
    }
    for (int t = 0; t < (int)c.triangles.size(); ++t) {
        const auto& tr = c.triangles[t];
        int onz = emask[c.edge_index(tr[0], tr[1])] + emask[c.edge_index(tr[1], tr[2])] +
                  emask[c.edge_index(tr[0], tr[2])];
        if (onz == 3) fail(ErrorCode::InputError, "locus is not full: triangle bounded by it");
    }
}

void MonodromyCocycle::validate(const CellComplex& c, const SingularLocus& z) const {
    // The bundle lives on the subcomplex disjoint from the locus: values sit
    // on locus-avoiding edges and closedness binds locus-avoiding triangles.
    // Transport through a branch cell is meaningless, so triangles touching
    // the locus impose nothing.
    if (values.size() != c.edges.size())
        fail(ErrorCode::InputError, "cocycle length does not match edge count");
    auto vmask = z.vertex_mask(c);
    for (int e = 0; e < (int)c.edges.size(); ++e)
        if ((vmask[c.edges[e][0]] || vmask[c.edges[e][1]]) && values[e])
            fail(ErrorCode::InputError, "cocycle nonzero on an edge meeting the locus");
    for (const auto& tr : c.triangles) {
        if (vmask[tr[0]] || vmask[tr[1]] || vmask[tr[2]]) continue;
        int s = values[c.edge_index(tr[0], tr[1])] ^ values[c.edge_index(tr[1], tr[2])] ^
                values[c.edge_index(tr[0], tr[2])];
        if (s) fail(ErrorCode::InputError, "cocycle not closed on a triangle off the locus");
    }
    for (const auto& loop : meridian_loops(c, z)) {
        int h = 0;
        for (size_t i = 0; i < loop.size(); ++i) {
            int e = c.edge_index(loop[i], loop[(i + 1) % loop.size()]);
            h ^= values[e];
        }
        if (!h) fail(ErrorCode::InputError, "cocycle has trivial holonomy around a meridian");
    }
}

std::vector<std::vector<int>> meridian_loops(const CellComplex& c, const SingularLocus& z) {
    std::vector<std::vector<int>> loops;
    auto vmask = z.vertex_mask(c);
    if (z.dimension == 2) {
        for (auto& comp : z.components) {
            auto cyc = c.vertex_link_cycle(comp[0]);
            if (!cyc) fail(ErrorCode::InputError, "no link cycle around locus vertex");
            loops.push_back(*cyc);
        }
        return loops;
    }
    for (auto& comp : z.components) {
        bool found = false;
        for (int e : comp) {
            auto cyc = c.edge_link_cycle(e);
            if (!cyc) continue;
            bool clean = true;
            for (int v : *cyc)
                if (vmask[v]) clean = false;
            for (size_t i = 0; i < cyc->size() && clean; ++i)
                if (c.edge_index((*cyc)[i], (*cyc)[(i + 1) % cyc->size()]) < 0) clean = false;
            if (clean) {
                loops.push_back(*cyc);
                found = true;
                break;
            }
        }
        if (!found)
            fail(ErrorCode::InputError,
                 "no locus-avoiding meridian loop; refine the mesh around the locus");
    }
    return loops;
}

MonodromyCocycle meridian_cocycle(const CellComplex& c, const SingularLocus& z,
                                  const std::vector<std::pair<int, uint8_t>>& pinned) {
    z.validate(c);
    auto vmask = z.vertex_mask(c);
    GF2System sys((int)c.edges.size());
    for (const auto& tr : c.triangles) {
        if (vmask[tr[0]] || vmask[tr[1]] || vmask[tr[2]]) continue;
        sys.add_equation({c.edge_index(tr[0], tr[1]), c.edge_index(tr[1], tr[2]),
                          c.edge_index(tr[0], tr[2])},
                         0);
    }
    for (const auto& loop : meridian_loops(c, z)) {
        std::vector<int> vars;
        for (size_t i = 0; i < loop.size(); ++i)
            vars.push_back(c.edge_index(loop[i], loop[(i + 1) % loop.size()]));
        sys.add_equation(vars, 1);
    }
    for (int e = 0; e < (int)c.edges.size(); ++e)
        if (vmask[c.edges[e][0]] || vmask[c.edges[e][1]]) sys.pin(e, 0);
    for (auto& [e, v] : pinned) sys.pin(e, v);
    auto sol = sys.solve();
    if (!sol)
        fail(ErrorCode::NoLineBundle,
             "no branched line bundle: meridian parity system is infeasible");
    MonodromyCocycle out;
    out.values = *sol;
    out.validate(c, z);
    return out;
}

}  // namespace z2f
