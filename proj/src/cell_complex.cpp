#include "z2f/cell_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace z2f {

namespace {

int sort_parity(std::vector<int>& v) {
    // parity of the permutation sorting v, +1 even, -1 odd
    int sign = 1;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            if (v[j] < v[i]) {
                std::swap(v[i], v[j]);
                sign = -sign;
            }
    return sign;
}

}  // namespace

CellComplex CellComplex::from_top_cells(int dimension, int n_vertices,
                                        const std::vector<std::vector<int>>& top,
                                        std::vector<std::array<double, 3>> positions,
                                        bool validate_manifold) {
    if (dimension != 2 && dimension != 3)
        fail(ErrorCode::DimensionError, "complex dimension must be 2 or 3");
    CellComplex c;
    c.dimension = dimension;
    c.n_vertices = n_vertices;
    c.positions = std::move(positions);
    std::set<std::array<int, 2>> es;
    std::set<std::array<int, 3>> ts;
    auto add_edge = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        es.insert({a, b});
    };
    auto add_tri = [&](std::array<int, 3> t) {
        std::sort(t.begin(), t.end());
        ts.insert(t);
    };
    for (const auto& cell : top) {
        if ((int)cell.size() != dimension + 1)
            fail(ErrorCode::InputError, "top cell arity does not match dimension");
        for (int v : cell)
            if (v < 0 || v >= n_vertices) fail(ErrorCode::InputError, "vertex index out of range");
        std::set<int> uniq(cell.begin(), cell.end());
        if ((int)uniq.size() != dimension + 1)
            fail(ErrorCode::InputError, "degenerate top cell (repeated vertex)");
        if (dimension == 2) {
            c.triangles.push_back({cell[0], cell[1], cell[2]});
            add_edge(cell[0], cell[1]);
            add_edge(cell[1], cell[2]);
            add_edge(cell[0], cell[2]);
        } else {
            c.tets.push_back({cell[0], cell[1], cell[2], cell[3]});
            for (int i = 0; i < 4; ++i) {
                std::array<int, 3> f;
                int k = 0;
                for (int j = 0; j < 4; ++j)
                    if (j != i) f[k++] = cell[j];
                add_tri(f);
                add_edge(f[0], f[1]);
                add_edge(f[1], f[2]);
                add_edge(f[0], f[2]);
            }
        }
    }
    c.edges.assign(es.begin(), es.end());
    if (dimension == 3) c.triangles.assign(ts.begin(), ts.end());
    if (validate_manifold) c.validate();
    return c;
}

void CellComplex::build_maps() const {
    if (edge_map_.size() == edges.size() && !edges.empty()) return;
    edge_map_.clear();
    tri_map_.clear();
    tet_map_.clear();
    for (int i = 0; i < (int)edges.size(); ++i) {
        auto [a, b] = std::pair(edges[i][0], edges[i][1]);
        edge_map_[{std::min(a, b), std::max(a, b)}] = i;
    }
    for (int i = 0; i < (int)triangles.size(); ++i) {
        auto t = triangles[i];
        std::sort(t.begin(), t.end());
        tri_map_[t] = i;
    }
    for (int i = 0; i < (int)tets.size(); ++i) {
        auto t = tets[i];
        std::sort(t.begin(), t.end());
        tet_map_[t] = i;
    }
}

std::pair<int, int> CellComplex::edge_lookup(int a, int b) const {
    build_maps();
    auto it = edge_map_.find({std::min(a, b), std::max(a, b)});
    if (it == edge_map_.end()) return {-1, 0};
    int idx = it->second;
    int sign = (edges[idx][0] == a) ? 1 : -1;
    return {idx, sign};
}

int CellComplex::edge_index(int a, int b) const { return edge_lookup(a, b).first; }

int CellComplex::triangle_index(std::array<int, 3> t) const {
    build_maps();
    std::sort(t.begin(), t.end());
    auto it = tri_map_.find(t);
    return it == tri_map_.end() ? -1 : it->second;
}

int CellComplex::tet_index(std::array<int, 4> t) const {
    build_maps();
    std::sort(t.begin(), t.end());
    auto it = tet_map_.find(t);
    return it == tet_map_.end() ? -1 : it->second;
}

int CellComplex::cell_count(int k) const {
    switch (k) {
        case 0: return n_vertices;
        case 1: return (int)edges.size();
        case 2: return (int)triangles.size();
        case 3: return (int)tets.size();
        default: return 0;
    }
}

SparseZ CellComplex::boundary_matrix(int k) const {
    if (k < 1 || k > dimension) fail(ErrorCode::DegreeError, "boundary degree out of range");
    SparseZ B(cell_count(k - 1), cell_count(k));
    if (k == 1) {
        for (int i = 0; i < (int)edges.size(); ++i) {
            B.add(edges[i][1], i, 1);
            B.add(edges[i][0], i, -1);
        }
        return B;
    }
    if (k == 2) {
        for (int i = 0; i < (int)triangles.size(); ++i) {
            const auto& t = triangles[i];
            for (int d = 0; d < 3; ++d) {
                std::vector<int> face;
                for (int j = 0; j < 3; ++j)
                    if (j != d) face.push_back(t[j]);
                int perm = sort_parity(face);
                auto [idx, sgn] = edge_lookup(face[0], face[1]);
                (void)sgn;
                B.add(idx, i, BigInt((d % 2 ? -1 : 1) * perm));
            }
        }
        return B;
    }
    for (int i = 0; i < (int)tets.size(); ++i) {
        const auto& t = tets[i];
        for (int d = 0; d < 4; ++d) {
            std::vector<int> face;
            for (int j = 0; j < 4; ++j)
                if (j != d) face.push_back(t[j]);
            int perm = sort_parity(face);
            int idx = triangle_index({face[0], face[1], face[2]});
            B.add(idx, i, BigInt((d % 2 ? -1 : 1) * perm));
        }
    }
    return B;
}

long long CellComplex::euler_characteristic() const {
    long long chi = n_vertices - (long long)edges.size() + (long long)triangles.size();
    if (dimension == 3) chi -= (long long)tets.size();
    return chi;
}

std::vector<int> CellComplex::vertex_components() const {
    std::vector<int> comp(n_vertices, -1);
    int nc = 0;
    const auto& ve = vertex_edges();
    for (int s = 0; s < n_vertices; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = nc;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e : ve[v]) {
                int w = edges[e][0] == v ? edges[e][1] : edges[e][0];
                if (comp[w] < 0) {
                    comp[w] = nc;
                    q.push(w);
                }
            }
        }
        ++nc;
    }
    return comp;
}

int CellComplex::component_count() const {
    auto c = vertex_components();
    return c.empty() ? 0 : 1 + *std::max_element(c.begin(), c.end());
}

const std::vector<std::vector<int>>& CellComplex::vertex_edges() const {
    if (v_edges_.empty() && !edges.empty()) {
        v_edges_.assign(n_vertices, {});
        for (int i = 0; i < (int)edges.size(); ++i) {
            v_edges_[edges[i][0]].push_back(i);
            v_edges_[edges[i][1]].push_back(i);
        }
    }
    return v_edges_;
}

const std::vector<std::vector<int>>& CellComplex::edge_triangles() const {
    if (e_tris_.empty() && !triangles.empty()) {
        e_tris_.assign(edges.size(), {});
        for (int i = 0; i < (int)triangles.size(); ++i) {
            const auto& t = triangles[i];
            e_tris_[edge_index(t[0], t[1])].push_back(i);
            e_tris_[edge_index(t[1], t[2])].push_back(i);
            e_tris_[edge_index(t[0], t[2])].push_back(i);
        }
    }
    return e_tris_;
}

const std::vector<std::vector<int>>& CellComplex::triangle_tets() const {
    if (t_tets_.empty() && !tets.empty()) {
        t_tets_.assign(triangles.size(), {});
        for (int i = 0; i < (int)tets.size(); ++i) {
            const auto& t = tets[i];
            for (int d = 0; d < 4; ++d) {
                std::array<int, 3> f;
                int k = 0;
                for (int j = 0; j < 4; ++j)
                    if (j != d) f[k++] = t[j];
                t_tets_[triangle_index(f)].push_back(i);
            }
        }
    }
    return t_tets_;
}

const std::vector<std::vector<int>>& CellComplex::vertex_triangles() const {
    if (v_tris_.empty() && !triangles.empty()) {
        v_tris_.assign(n_vertices, {});
        for (int i = 0; i < (int)triangles.size(); ++i)
            for (int v : triangles[i]) v_tris_[v].push_back(i);
    }
    return v_tris_;
}

const std::vector<std::vector<int>>& CellComplex::vertex_tets() const {
    if (v_tets_.empty() && !tets.empty()) {
        v_tets_.assign(n_vertices, {});
        for (int i = 0; i < (int)tets.size(); ++i)
            for (int v : tets[i]) v_tets_[v].push_back(i);
    }
    return v_tets_;
}

std::optional<std::vector<int>> CellComplex::vertex_link_cycle(int v) const {
    // edges opposite v in the triangles at v must chain into one cycle
    std::map<int, std::vector<int>> adj;  // link vertex -> neighbours in link
    int n_link_edges = 0;
    for (int t : vertex_triangles()[v]) {
        std::vector<int> opp;
        for (int w : triangles[t])
            if (w != v) opp.push_back(w);
        adj[opp[0]].push_back(opp[1]);
        adj[opp[1]].push_back(opp[0]);
        ++n_link_edges;
    }
    if (adj.empty()) return std::nullopt;
    for (auto& [w, nb] : adj)
        if (nb.size() != 2) return std::nullopt;
    std::vector<int> cycle;
    int start = adj.begin()->first;
    int prev = -1, cur = start;
    do {
        cycle.push_back(cur);
        auto& nb = adj[cur];
        int nxt = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
    } while (cur != start && (int)cycle.size() <= n_link_edges + 1);
    if ((int)cycle.size() != (int)adj.size()) return std::nullopt;
    return cycle;
}

std::optional<std::vector<int>> CellComplex::edge_link_cycle(int e) const {
    int a = edges[e][0], b = edges[e][1];
    std::map<int, std::vector<int>> adj;
    int count = 0;
    for (int t : vertex_tets().empty() ? std::vector<int>{} : vertex_tets()[a]) {
        const auto& tet = tets[t];
        bool has_b = std::find(tet.begin(), tet.end(), b) != tet.end();
        if (!has_b) continue;
        std::vector<int> opp;
        for (int w : tet)
            if (w != a && w != b) opp.push_back(w);
        adj[opp[0]].push_back(opp[1]);
        adj[opp[1]].push_back(opp[0]);
        ++count;
    }
    if (adj.empty()) return std::nullopt;
    for (auto& [w, nb] : adj)
        if (nb.size() != 2) return std::nullopt;
    std::vector<int> cycle;
    int start = adj.begin()->first;
    int prev = -1, cur = start;
    do {
        cycle.push_back(cur);
        auto& nb = adj[cur];
        int nxt = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
    } while (cur != start && (int)cycle.size() <= count + 1);
    if ((int)cycle.size() != (int)adj.size()) return std::nullopt;
    return cycle;
}

void CellComplex::validate() const {
    // closure: faces of every stored cell must exist
    for (const auto& t : triangles)
        for (int d = 0; d < 3; ++d)
            if (edge_index(t[d], t[(d + 1) % 3]) < 0)
                fail(ErrorCode::InputError, "missing edge face of a triangle");
    for (const auto& t : tets)
        for (int d = 0; d < 4; ++d) {
            std::array<int, 3> f;
            int k = 0;
            for (int j = 0; j < 4; ++j)
                if (j != d) f[k++] = t[j];
            if (triangle_index(f) < 0) fail(ErrorCode::InputError, "missing triangle face of a tet");
        }

    // codimension-1 coherence: each (d-1)-cell in exactly two top cells with
    // opposite induced signs
    SparseZ top = boundary_matrix(dimension);
    for (int r = 0; r < top.rows(); ++r) {
        const auto& row_cols = top.row(r);
        BigInt sum = 0;
        int cnt = 0;
        for (auto& [j, v] : row_cols) {
            sum += v;
            cnt += (v == 1 || v == -1) ? 1 : 2;
        }
        if (cnt != 2 || sum != 0)
            fail(ErrorCode::InputError,
                 "not a closed oriented manifold: codimension-1 cell " + std::to_string(r) +
                     " has incoherent cofaces");
    }
    // chain condition: composite boundaries vanish exactly over Z
    for (int k = 2; k <= dimension; ++k) {
        SparseZ hi = boundary_matrix(k);
        std::vector<std::map<int, BigInt>> hi_cols(hi.cols());
        for (int i = 0; i < hi.rows(); ++i)
            for (auto& [j, v] : hi.row(i)) hi_cols[j][i] = v;
        for (int j = 0; j < hi.cols(); ++j) {
            std::map<int, BigInt> acc;
            for (auto& [mid, vm] : hi_cols[j]) {
                // column `mid` of `lo`
                if (k - 1 == 1) {
                    acc[edges[mid][1]] += vm;
                    acc[edges[mid][0]] -= vm;
                } else {
                    const auto& t = triangles[mid];
                    for (int d = 0; d < 3; ++d) {
                        std::vector<int> face;
                        for (int q = 0; q < 3; ++q)
                            if (q != d) face.push_back(t[q]);
                        int perm = sort_parity(face);
                        acc[edge_index(face[0], face[1])] += BigInt((d % 2 ? -1 : 1) * perm) * vm;
                    }
                }
            }
            for (auto& [r, s] : acc)
                if (s != 0) fail(ErrorCode::InputError, "boundary of boundary nonzero");
        }
    }

    // link conditions
    if (dimension == 2) {
        for (int v = 0; v < n_vertices; ++v)
            if (!vertex_triangles().empty() && !vertex_triangles()[v].empty() &&
                !vertex_link_cycle(v))
                fail(ErrorCode::InputError,
                     "vertex link is not a single cycle at vertex " + std::to_string(v));
    } else {
        for (int e = 0; e < (int)edges.size(); ++e)
            if (!edge_link_cycle(e))
                fail(ErrorCode::InputError,
                     "edge link is not a single cycle at edge " + std::to_string(e));
        // vertex links: connected with sphere Euler characteristic
        for (int v = 0; v < n_vertices; ++v) {
            std::set<int> lv;
            std::set<std::pair<int, int>> le;
            std::set<std::array<int, 3>> lt;
            for (int t : vertex_tets()[v]) {
                std::vector<int> opp;
                for (int w : tets[t])
                    if (w != v) opp.push_back(w);
                std::sort(opp.begin(), opp.end());
                lt.insert({opp[0], opp[1], opp[2]});
                for (int i = 0; i < 3; ++i)
                    for (int j = i + 1; j < 3; ++j) le.insert({opp[i], opp[j]});
                for (int w : opp) lv.insert(w);
            }
            if (lt.empty()) continue;
            long long chi = (long long)lv.size() - (long long)le.size() + (long long)lt.size();
            if (chi != 2)
                fail(ErrorCode::InputError,
                     "vertex link is not a 2-sphere at vertex " + std::to_string(v));
        }
    }
}

HomologySummary homology(const CellComplex& c) {
    int d = c.dimension;
    std::vector<int> rank(d + 2, 0);
    std::vector<std::vector<BigInt>> factors(d + 2);
    for (int k = 1; k <= d; ++k) {
        auto s = smith_invariants(c.boundary_matrix(k));
        rank[k] = s.rank;
        factors[k] = s.factors;
    }
    HomologySummary out;
    out.betti.resize(d + 1);
    out.torsion.assign(d + 1, {});
    for (int k = 0; k <= d; ++k) {
        out.betti[k] = c.cell_count(k) - rank[k] - rank[k + 1];
        out.torsion[k] = factors[k + 1];  // torsion of H_k comes from d_{k+1}
    }
    return out;
}

bool is_rational_homology_sphere(const CellComplex& c) {
    if (c.dimension != 3) fail(ErrorCode::DimensionError, "rational homology sphere test needs a 3-complex");
    auto h = homology(c);
    return h.betti == std::vector<int>{1, 0, 0, 1};
}

std::vector<Cycle> fundamental_cycles(const CellComplex& c) {
    // BFS forest; each chord closes one cycle through tree paths
    std::vector<int> parent_edge(c.n_vertices, -1), parent_vertex(c.n_vertices, -1),
        depth(c.n_vertices, -1);
    std::vector<char> in_tree(c.edges.size(), 0);
    const auto& ve = c.vertex_edges();
    for (int s = 0; s < c.n_vertices; ++s) {
        if (depth[s] >= 0) continue;
        depth[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e : ve[v]) {
                int w = c.edges[e][0] == v ? c.edges[e][1] : c.edges[e][0];
                if (depth[w] < 0) {
                    depth[w] = depth[v] + 1;
                    parent_edge[w] = e;
                    parent_vertex[w] = v;
                    in_tree[e] = 1;
                    q.push(w);
                }
            }
        }
    }
    std::vector<Cycle> cycles;
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        if (in_tree[e]) continue;
        // cycle: edge e from a to b, then tree path b -> a
        std::map<int, BigInt> acc;
        int a = c.edges[e][0], b = c.edges[e][1];
        acc[e] += 1;
        // walk both endpoints to their common ancestor; the b-side is
        // traversed with the walk, the a-side against it
        int x = b, y = a;
        while (x != y) {
            bool from_b = depth[x] >= depth[y];
            int& z = from_b ? x : y;
            int pe = parent_edge[z];
            int pz = parent_vertex[z];
            BigInt sgn = (c.edges[pe][0] == z) ? 1 : -1;
            acc[pe] += from_b ? sgn : -sgn;
            z = pz;
        }
        Cycle cyc;
        for (auto& [i, v] : acc)
            if (v != 0) cyc.push_back({i, v});
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

double coboundary_max(const CellComplex& c, const Cochain& cochain) {
    double worst = 0;
    for (const auto& t : c.triangles) {
        double s = 0;
        int vs[3][2] = {{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}};
        for (auto& [a, b] : vs) {
            auto [idx, sgn] = c.edge_lookup(a, b);
            s += sgn * cochain.values[idx];
        }
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

std::vector<double> periods(const CellComplex& c, const Cochain& cochain,
                            const std::vector<Cycle>& cycles) {
    if (cochain.degree != 1 || (int)cochain.values.size() != (int)c.edges.size())
        fail(ErrorCode::InputError, "periods needs a 1-cochain on the complex");
    double scale = 0;
    for (double v : cochain.values) scale = std::max(scale, std::abs(v));
    if (coboundary_max(c, cochain) > 1e-9 * std::max(1.0, scale))
        fail(ErrorCode::NotClosed, "cochain is not closed");
    std::vector<double> out;
    for (const auto& cyc : cycles) {
        double s = 0;
        for (auto& [e, k] : cyc) s += static_cast<double>(k) * cochain.values[e];
        out.push_back(s);
    }
    return out;
}

CocycleBasis cocycle_basis(const CellComplex& c) {
    CocycleBasis out;
    auto h = homology(c);
    int b1 = h.betti[1];
    if (b1 == 0) return out;

    // closed integer 1-cochains: kernel of the transposed degree-2 boundary
    SparseZ b2 = c.boundary_matrix(2);
    SparseZ b2t(b2.cols(), b2.rows());
    for (int i = 0; i < b2.rows(); ++i)
        for (auto& [j, v] : b2.row(i)) b2t.set(j, i, v);
    auto closed = integer_kernel(std::move(b2t));  // cochains as sparse vectors
    auto chords = fundamental_cycles(c);

    // pairing matrix: closed cochains x chord cycles
    int m = (int)closed.size(), n = (int)chords.size();
    std::vector<std::vector<BigInt>> P(m, std::vector<BigInt>(n, 0));
    for (int i = 0; i < m; ++i) {
        std::map<int, BigInt> ci(closed[i].begin(), closed[i].end());
        for (int j = 0; j < n; ++j) {
            BigInt s = 0;
            for (auto& [e, k] : chords[j]) {
                auto it = ci.find(e);
                if (it != ci.end()) s += k * it->second;
            }
            P[i][j] = s;
        }
    }
    auto sm = smith_with_transforms(P);
    if (sm.rank != b1) fail(ErrorCode::ArithmeticError, "cocycle pairing rank mismatch");
    for (int k = 0; k < b1; ++k)
        if (sm.S[k][k] != 1)
            fail(ErrorCode::ArithmeticError, "cocycle pairing is not unimodular");

    // cochains: first b1 rows of U * closed; cycles: chord combinations by V
    for (int k = 0; k < b1; ++k) {
        std::vector<BigInt> coch(c.edges.size(), 0);
        for (int i = 0; i < m; ++i) {
            if (sm.U[k][i] == 0) continue;
            for (auto& [e, v] : closed[i]) coch[e] += sm.U[k][i] * v;
        }
        out.cochains.push_back(std::move(coch));
        std::map<int, BigInt> acc;
        for (int j = 0; j < n; ++j) {
            if (sm.V[j][k] == 0) continue;
            for (auto& [e, v] : chords[j]) acc[e] += sm.V[j][k] * v;
        }
        Cycle cyc;
        for (auto& [e, v] : acc)
            if (v != 0) cyc.push_back({e, v});
        out.cycles.push_back(std::move(cyc));
    }
    out.period_matrix.assign(b1, std::vector<BigInt>(b1, 0));
    for (int i = 0; i < b1; ++i)
        for (int j = 0; j < b1; ++j) {
            BigInt s = 0;
            std::map<int, BigInt> ci;
            for (int e = 0; e < (int)out.cochains[i].size(); ++e)
                if (out.cochains[i][e] != 0) ci[e] = out.cochains[i][e];
            for (auto& [e, k] : out.cycles[j]) {
                auto it = ci.find(e);
                if (it != ci.end()) s += k * it->second;
            }
            out.period_matrix[i][j] = s;
        }
    return out;
}

Subdivision barycentric_subdivision(const CellComplex& c) {
    Subdivision out;
    int d = c.dimension;
    std::vector<std::vector<int>> nv(d + 1);
    int next = 0;
    std::vector<std::array<double, 3>> pos;
    bool has_pos = !c.positions.empty();
    auto centroid = [&](const std::vector<int>& vs) {
        std::array<double, 3> p{0, 0, 0};
        for (int v : vs)
            for (int k = 0; k < 3; ++k) p[k] += c.positions[v][k] / vs.size();
        return p;
    };
    nv[0].resize(c.n_vertices);
    for (int v = 0; v < c.n_vertices; ++v) {
        nv[0][v] = next++;
        if (has_pos) pos.push_back(c.positions[v]);
    }
    nv[1].resize(c.edges.size());
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        nv[1][e] = next++;
        if (has_pos) pos.push_back(centroid({c.edges[e][0], c.edges[e][1]}));
    }
    nv[2].resize(c.triangles.size());
    for (int t = 0; t < (int)c.triangles.size(); ++t) {
        nv[2][t] = next++;
        if (has_pos) pos.push_back(centroid({c.triangles[t][0], c.triangles[t][1], c.triangles[t][2]}));
    }
    if (d == 3) {
        nv[3].resize(c.tets.size());
        for (int t = 0; t < (int)c.tets.size(); ++t) {
            nv[3][t] = next++;
            if (has_pos)
                pos.push_back(centroid({c.tets[t][0], c.tets[t][1], c.tets[t][2], c.tets[t][3]}));
        }
    }
    std::vector<std::vector<int>> top;
    if (d == 2) {
        for (int t = 0; t < (int)c.triangles.size(); ++t) {
            const auto& tri = c.triangles[t];
            // flags v < e < t; orientation follows the big triangle via the
            // position of v in e and the edge opposite-vertex parity
            int edges3[3][2] = {{tri[0], tri[1]}, {tri[1], tri[2]}, {tri[2], tri[0]}};
            for (auto& ed : edges3) {
                int e = c.edge_index(ed[0], ed[1]);
                // (first endpoint, mid, center) keeps the parent orientation,
                // (second endpoint, center, mid) is its coherent partner
                top.push_back({ed[0], nv[1][e], nv[2][t]});
                top.push_back({ed[1], nv[2][t], nv[1][e]});
            }
        }
    } else {
        for (int t = 0; t < (int)c.tets.size(); ++t) {
            const auto& tet = c.tets[t];
            std::vector<int> vs(tet.begin(), tet.end());
            // 24 flags v < e < f < tet; the flag in parent vertex order
            // (a, b, c, rest) carries the parity of that permutation
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    if (b == a) continue;
                    for (int e2 = 0; e2 < 4; ++e2) {
                        if (e2 == a || e2 == b) continue;
                        int eid = c.edge_index(vs[a], vs[b]);
                        int fid = c.triangle_index({vs[a], vs[b], vs[e2]});
                        int last = 6 - a - b - e2;
                        std::vector<int> perm = {a, b, e2, last};
                        int sgn = sort_parity(perm);
                        std::vector<int> cell = {vs[a], nv[1][eid], nv[2][fid], nv[3][t]};
                        if (sgn < 0) std::swap(cell[2], cell[3]);
                        top.push_back(cell);
                    }
                }
        }
    }
    out.complex = CellComplex::from_top_cells(d, next, top, pos);
    out.new_vertex_of_cell = nv;
    return out;
}

TriangleSplit split_triangles(const CellComplex& c, const std::vector<int>& tri_ids) {
    TriangleSplit out;
    std::set<int> split(tri_ids.begin(), tri_ids.end());
    int next = c.n_vertices;
    std::map<int, int> center;
    std::vector<std::array<double, 3>> pos = c.positions;
    bool has_pos = !pos.empty();
    for (int t : tri_ids) {
        center[t] = next++;
        if (has_pos) {
            std::array<double, 3> p{0, 0, 0};
            for (int v : c.triangles[t])
                for (int k = 0; k < 3; ++k) p[k] += c.positions[v][k] / 3.0;
            pos.push_back(p);
        }
    }
    std::vector<std::vector<int>> top;
    if (c.dimension == 2) {
        for (int t = 0; t < (int)c.triangles.size(); ++t) {
            const auto& tri = c.triangles[t];
            if (!split.count(t)) {
                top.push_back({tri[0], tri[1], tri[2]});
                continue;
            }
            int z = center[t];
            top.push_back({z, tri[1], tri[2]});
            top.push_back({tri[0], z, tri[2]});
            top.push_back({tri[0], tri[1], z});
        }
    } else {
        for (int t = 0; t < (int)c.tets.size(); ++t) {
            const auto& tet = c.tets[t];
            std::vector<int> hits;
            for (int d = 0; d < 4; ++d) {
                std::array<int, 3> f;
                int k = 0;
                for (int j = 0; j < 4; ++j)
                    if (j != d) f[k++] = tet[j];
                int fid = c.triangle_index(f);
                if (split.count(fid)) hits.push_back(d);
            }
            if (hits.empty()) {
                top.push_back({tet[0], tet[1], tet[2], tet[3]});
                continue;
            }
            if (hits.size() > 1)
                fail(ErrorCode::InputError, "tet incident to two split triangles");
            int d = hits[0];
            std::array<int, 3> f;
            int k = 0;
            for (int j = 0; j < 4; ++j)
                if (j != d) f[k++] = tet[j];
            int z = center[c.triangle_index(f)];
            // replace each face vertex by z in turn, keeping orientation
            for (int j = 0; j < 4; ++j) {
                if (j == d) continue;
                std::vector<int> cell(tet.begin(), tet.end());
                cell[j] = z;
                top.push_back(cell);
            }
        }
    }
    out.complex = CellComplex::from_top_cells(c.dimension, next, top, pos);
    for (int t : tri_ids) out.center_vertex.push_back(center[t]);
    return out;
}

}  // namespace z2f
