#include "z2f/presets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace z2f {
namespace presets {

namespace {

// Build a complex from top cells given in arbitrary orientation, flipping
// cells over the dual graph until the induced codimension-1 signs cancel.
CellComplex make_oriented(int dim, int n_vertices, std::vector<std::vector<int>> top,
                          std::vector<std::array<double, 3>> positions = {}) {
    // facet key -> (cell, parity of facet within the cell's current order)
    auto facet_keys = [&](const std::vector<int>& cell) {
        std::vector<std::pair<std::vector<int>, int>> out;
        for (size_t d = 0; d < cell.size(); ++d) {
            std::vector<int> f;
            for (size_t j = 0; j < cell.size(); ++j)
                if (j != d) f.push_back(cell[j]);
            int sgn = (d % 2) ? -1 : 1;
            // normalize to sorted order, fold the sort parity into the sign
            std::vector<int> s = f;
            for (size_t i = 0; i < s.size(); ++i)
                for (size_t j = i + 1; j < s.size(); ++j)
                    if (s[j] < s[i]) {
                        std::swap(s[i], s[j]);
                        sgn = -sgn;
                    }
            out.push_back({s, sgn});
        }
        return out;
    };
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> facets;
    for (int t = 0; t < (int)top.size(); ++t)
        for (auto& [key, sgn] : facet_keys(top[t])) facets[key].push_back({t, sgn});
    for (auto& [key, inc] : facets)
        if (inc.size() != 2) fail(ErrorCode::InputError, "facet not shared by exactly two cells");
    std::vector<int> flip(top.size(), -1);
    for (int s = 0; s < (int)top.size(); ++s) {
        if (flip[s] >= 0) continue;
        flip[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int t = q.front();
            q.pop();
            for (auto& [key, sgn] : facet_keys(top[t])) {
                for (auto& [o, osgn] : facets[key]) {
                    if (o == t) continue;
                    // coherent: effective signs must be opposite
                    int want = (sgn * (flip[t] ? -1 : 1) == osgn) ? 1 : 0;
                    if (flip[o] < 0) {
                        flip[o] = want;
                        q.push(o);
                    } else if (flip[o] != want) {
                        fail(ErrorCode::InputError, "top cells are not orientable");
                    }
                }
            }
        }
    }
    for (int t = 0; t < (int)top.size(); ++t)
        if (flip[t]) std::swap(top[t][0], top[t][1]);
    return CellComplex::from_top_cells(dim, n_vertices, top, std::move(positions));
}

}  // namespace

CellComplex tetrahedron_sphere() {
    return make_oriented(2, 4, {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}});
}

CellComplex icosahedron() {
    const double p = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<std::array<double, 3>> pos = {
        {-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p},  {0, 1, p},
        {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1},
    };
    std::vector<std::vector<int>> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
        {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
        {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
    };
    return make_oriented(2, 12, faces, pos);
}

CellComplex torus_grid(int n) {
    if (n < 3) fail(ErrorCode::InputError, "torus grid needs n >= 3");
    auto id = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
    std::vector<std::vector<int>> top;
    std::vector<std::array<double, 3>> pos(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            pos[id(i, j)] = {double(i) / n, double(j) / n, 0.0};
            top.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            top.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    return make_oriented(2, n * n, top, pos);
}

CellComplex seven_vertex_torus() {
    std::vector<std::vector<int>> top;
    for (int i = 0; i < 7; ++i) {
        top.push_back({i, (i + 1) % 7, (i + 3) % 7});
        top.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return make_oriented(2, 7, top);
}

CellComplex boundary_4_simplex() {
    std::vector<std::vector<int>> top;
    for (int d = 0; d < 5; ++d) {
        std::vector<int> cell;
        for (int j = 0; j < 5; ++j)
            if (j != d) cell.push_back(j);
        top.push_back(cell);
    }
    return make_oriented(3, 5, top);
}

CellComplex join_sphere3(int m, int n) {
    if (m < 3 || n < 3) fail(ErrorCode::InputError, "join factors need >= 3 vertices");
    std::vector<std::vector<int>> top;
    auto a = [&](int i) { return (i % m + m) % m; };
    auto b = [&](int j) { return m + (j % n + n) % n; };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) top.push_back({a(i), a(i + 1), b(j), b(j + 1)});
    return make_oriented(3, m + n, top);
}

LocusPreset s3_unknot() {
    LocusPreset out;
    out.complex = join_sphere3(3, 4);
    std::vector<int> comp;
    for (int i = 0; i < 3; ++i) comp.push_back(out.complex.edge_index(i, (i + 1) % 3));
    out.locus = SingularLocus{3, {comp}};
    out.locus.validate(out.complex);
    return out;
}

LocusPreset s3_hopf_link() {
    auto base = join_sphere3(3, 3);
    auto sub = barycentric_subdivision(base);
    LocusPreset out;
    out.complex = sub.complex;
    auto core = [&](std::vector<std::pair<int, int>> loop) {
        std::vector<int> comp;
        for (auto& [u, v] : loop) {
            int e = base.edge_index(u, v);
            int mid = sub.new_vertex_of_cell[1][e];
            comp.push_back(out.complex.edge_index(u, mid));
            comp.push_back(out.complex.edge_index(mid, v));
        }
        return comp;
    };
    out.locus.dimension = 3;
    out.locus.components.push_back(core({{0, 1}, {1, 2}, {2, 0}}));
    out.locus.components.push_back(core({{3, 4}, {4, 5}, {5, 3}}));
    out.locus.validate(out.complex);
    return out;
}

LocusPreset s3_unlink(int k) {
    if (k < 1 || k > 3) fail(ErrorCode::InputError, "unlink preset supports 1..3 components");
    auto sub = barycentric_subdivision(boundary_4_simplex());
    const CellComplex& c = sub.complex;
    // greedily pick vertex-disjoint triangles with no connecting edges
    std::vector<int> chosen;
    std::set<int> used_vertices;
    for (int t = 0; t < (int)c.triangles.size() && (int)chosen.size() < k; ++t) {
        const auto& tr = c.triangles[t];
        bool ok = true;
        for (int v : tr)
            if (used_vertices.count(v)) ok = false;
        for (int v : tr)
            for (int u : used_vertices)
                if (c.edge_index(v, u) >= 0) ok = false;
        if (!ok) continue;
        chosen.push_back(t);
        for (int v : tr) used_vertices.insert(v);
    }
    if ((int)chosen.size() < k) fail(ErrorCode::InputError, "could not place split unknots");
    std::vector<std::array<int, 3>> corners;
    for (int t : chosen) corners.push_back(c.triangles[t]);
    auto split = split_triangles(c, chosen);
    LocusPreset out;
    out.complex = split.complex;
    out.locus.dimension = 3;
    for (auto& tr : corners) {
        std::vector<int> comp = {out.complex.edge_index(tr[0], tr[1]),
                                 out.complex.edge_index(tr[1], tr[2]),
                                 out.complex.edge_index(tr[0], tr[2])};
        out.locus.components.push_back(comp);
    }
    out.locus.validate(out.complex);
    return out;
}

LocusPreset sphere_two_points() {
    LocusPreset out;
    out.complex = icosahedron();
    // antipodal pair by position
    int a = 0, b = -1;
    for (int v = 1; v < out.complex.n_vertices; ++v) {
        double s = 0;
        for (int kk = 0; kk < 3; ++kk)
            s += std::abs(out.complex.positions[v][kk] + out.complex.positions[a][kk]);
        if (s < 1e-12) b = v;
    }
    if (b < 0) fail(ErrorCode::InputError, "no antipodal vertex found");
    out.locus.dimension = 2;
    out.locus.components = {{a}, {b}};
    out.locus.validate(out.complex);
    return out;
}

}  // namespace presets
}  // namespace z2f
