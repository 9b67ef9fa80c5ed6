#include "z2f/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace z2f {

void MetricWeights::validate(const BranchedCover& cover) const {
    if (edge_w.size() != cover.complex.edges.size() ||
        vertex_w.size() != (size_t)cover.complex.n_vertices)
        fail(ErrorCode::InputError, "weight vector sizes do not match the cover");
    for (double w : edge_w)
        if (!(w > 0)) fail(ErrorCode::InputError, "edge weights must be positive");
    for (double w : vertex_w)
        if (!(w > 0)) fail(ErrorCode::InputError, "vertex weights must be positive");
    for (int e = 0; e < (int)edge_w.size(); ++e)
        if (edge_w[e] != edge_w[cover.tau[1][e]])
            fail(ErrorCode::InputError, "edge weights are not deck-invariant");
    for (int v = 0; v < (int)vertex_w.size(); ++v)
        if (vertex_w[v] != vertex_w[cover.tau[0][v]])
            fail(ErrorCode::InputError, "vertex weights are not deck-invariant");
}

MetricWeights uniform_weights(const BranchedCover& cover) {
    MetricWeights w;
    w.kind = "uniform";
    w.edge_w.assign(cover.complex.edges.size(), 1.0);
    w.vertex_w.assign(cover.complex.n_vertices, 1.0);
    return w;
}

namespace {

using V3 = std::array<double, 3>;
V3 sub(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
V3 cross(const V3& a, const V3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const V3& a) { return std::sqrt(dot(a, a)); }

double tet_volume(const V3& a, const V3& b, const V3& c, const V3& d) {
    return dot(sub(b, a), cross(sub(c, a), sub(d, a))) / 6.0;
}

}  // namespace

MetricWeights cotan_weights(const BranchedCover& cover) {
    const CellComplex& B = cover.base;
    if (B.positions.empty())
        fail(ErrorCode::InputError, "cotan weights need vertex positions on the base");
    std::vector<double> base_edge(B.edges.size(), 0.0);
    std::vector<double> base_vertex(B.n_vertices, 0.0);
    if (B.dimension == 2) {
        for (const auto& t : B.triangles) {
            V3 p[3] = {B.positions[t[0]], B.positions[t[1]], B.positions[t[2]]};
            double area = 0.5 * norm(cross(sub(p[1], p[0]), sub(p[2], p[0])));
            for (int i = 0; i < 3; ++i) base_vertex[t[i]] += area / 3.0;
            for (int i = 0; i < 3; ++i) {
                int a = t[i], b = t[(i + 1) % 3], opp = t[(i + 2) % 3];
                V3 u = sub(B.positions[a], B.positions[opp]);
                V3 v = sub(B.positions[b], B.positions[opp]);
                double cot = dot(u, v) / std::max(norm(cross(u, v)), 1e-300);
                base_edge[B.edge_index(a, b)] += 0.5 * cot;
            }
        }
    } else {
        // circumcentric dual faces per edge, assembled tet by tet
        for (const auto& t : B.tets) {
            V3 p[4] = {B.positions[t[0]], B.positions[t[1]], B.positions[t[2]], B.positions[t[3]]};
            double vol = std::abs(tet_volume(p[0], p[1], p[2], p[3]));
            for (int i = 0; i < 4; ++i) base_vertex[t[i]] += vol / 4.0;
            // circumcenter of the tet
            V3 a = sub(p[1], p[0]), b = sub(p[2], p[0]), c = sub(p[3], p[0]);
            double det = 2.0 * dot(a, cross(b, c));
            if (std::abs(det) < 1e-300) continue;
            V3 num = {0, 0, 0};
            V3 t1 = cross(b, c), t2 = cross(c, a), t3 = cross(a, b);
            for (int k = 0; k < 3; ++k)
                num[k] = dot(a, a) * t1[k] + dot(b, b) * t2[k] + dot(c, c) * t3[k];
            V3 cc = {p[0][0] + num[0] / det, p[0][1] + num[1] / det, p[0][2] + num[2] / det};
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j) {
                    int va = t[i], vb = t[j];
                    V3 mid = {(B.positions[va][0] + B.positions[vb][0]) / 2,
                              (B.positions[va][1] + B.positions[vb][1]) / 2,
                              (B.positions[va][2] + B.positions[vb][2]) / 2};
                    double contrib = 0.0;
                    // the two triangles of the tet containing this edge
                    for (int k = 0; k < 4; ++k) {
                        if (k == i || k == j) continue;
                        std::array<int, 3> f = {va, vb, t[k]};
                        V3 q[3] = {B.positions[f[0]], B.positions[f[1]], B.positions[f[2]]};
                        // circumcenter of the face, in its plane
                        V3 u = sub(q[1], q[0]), w = sub(q[2], q[0]);
                        V3 n = cross(u, w);
                        double n2 = dot(n, n);
                        if (n2 < 1e-300) continue;
                        V3 fc;
                        V3 t4 = cross(sub(q[1], q[0]), n), t5 = cross(n, sub(q[2], q[0]));
                        for (int kk = 0; kk < 3; ++kk)
                            fc[kk] = q[0][kk] +
                                     (dot(w, w) * t4[kk] + dot(u, u) * t5[kk]) / (2.0 * n2);
                        // signed area of (mid, fc, cc) projected along the edge
                        V3 ev = sub(B.positions[vb], B.positions[va]);
                        double elen = norm(ev);
                        V3 ar = cross(sub(fc, mid), sub(cc, mid));
                        contrib += 0.5 * dot(ar, ev) / std::max(elen, 1e-300);
                    }
                    base_edge[B.edge_index(va, vb)] += contrib;
                }
        }
        // normalize dual area to a weight per unit edge length
        for (int e = 0; e < (int)B.edges.size(); ++e) {
            double elen = norm(sub(B.positions[B.edges[e][1]], B.positions[B.edges[e][0]]));
            base_edge[e] /= std::max(elen, 1e-300);
        }
    }
    // combinatorial fallback where the dual degenerates
    for (double& w : base_edge)
        if (!(w > 1e-12)) w = 1.0;
    for (double& w : base_vertex)
        if (!(w > 1e-12)) w = 1.0;

    MetricWeights out;
    out.kind = "cotan";
    out.edge_w.resize(cover.complex.edges.size());
    out.vertex_w.resize(cover.complex.n_vertices);
    for (int e = 0; e < (int)out.edge_w.size(); ++e) out.edge_w[e] = base_edge[cover.to_base[1][e]];
    for (int v = 0; v < (int)out.vertex_w.size(); ++v)
        out.vertex_w[v] = base_vertex[cover.to_base[0][v]];
    return out;
}

double residual(const BranchedCover& cover, const MetricWeights& w,
                const std::vector<double>& cochain, bool skip_branch) {
    const CellComplex& c = cover.complex;
    if (cochain.size() != c.edges.size()) fail(ErrorCode::InputError, "cochain length mismatch");
    std::vector<double> div(c.n_vertices, 0.0);
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        double f = w.edge_w[e] * cochain[e];
        div[c.edges[e][1]] += f;
        div[c.edges[e][0]] -= f;
    }
    double acc = 0.0;
    for (int v = 0; v < c.n_vertices; ++v) {
        if (skip_branch && cover.branch[0][v]) continue;
        acc += div[v] * div[v] / w.vertex_w[v];
    }
    return std::sqrt(acc);
}

namespace {

// projection onto the admissible potential space: anti-invariant, zero on
// branch vertices, and orthogonal to the locally constant kernel directions
struct PotentialProjector {
    const BranchedCover& cover;
    std::vector<int> comp;       // vertex component of the cover
    std::vector<char> has_branch;
    std::vector<std::vector<int>> comp_vertices;

    explicit PotentialProjector(const BranchedCover& cov) : cover(cov) {
        comp = cov.complex.vertex_components();
        int nc = comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
        has_branch.assign(nc, 0);
        comp_vertices.assign(nc, {});
        for (int v = 0; v < cov.complex.n_vertices; ++v) {
            comp_vertices[comp[v]].push_back(v);
            if (cov.branch[0][v]) has_branch[comp[v]] = 1;
        }
    }

    void apply(std::vector<double>& x) const {
        if (cover.trivial) {
            // plain harmonic theory: kill per-component means
            for (auto& verts : comp_vertices) {
                double m = 0;
                for (int v : verts) m += x[v];
                m /= (double)verts.size();
                for (int v : verts) x[v] -= m;
            }
            return;
        }
        for (int v = 0; v < (int)x.size(); ++v) {
            int tv = cover.tau[0][v];
            if (tv == v) {
                x[v] = 0.0;
            } else if (v < tv) {
                double a = 0.5 * (x[v] - x[tv]);
                x[v] = a;
                x[tv] = -a;
            }
        }
        // anti-invariant constants on branchless swapped component pairs
        for (int k = 0; k < (int)comp_vertices.size(); ++k) {
            if (has_branch[k] || comp_vertices[k].empty()) continue;
            int rep = comp_vertices[k][0];
            int other = comp[cover.tau[0][rep]];
            if (other < k) continue;  // handled with its partner
            double m = 0;
            for (int v : comp_vertices[k]) m += x[v];
            m /= (double)comp_vertices[k].size();
            for (int v : comp_vertices[k]) x[v] -= m;
            if (other != k)
                for (int v : comp_vertices[other]) x[v] += m;
        }
    }
};

}  // namespace

double HarmonicForm::energy(const MetricWeights& w) const {
    double acc = 0;
    for (int e = 0; e < (int)values.size(); ++e) acc += w.edge_w[e] * values[e] * values[e];
    return acc;
}

HarmonicForm harmonic_representative_of(const BranchedCover& cover, const MetricWeights& weights,
                                        const std::vector<double>& class_values,
                                        const SolverOptions& opts) {
    const CellComplex& c = cover.complex;
    weights.validate(cover);
    if (class_values.size() != c.edges.size())
        fail(ErrorCode::InputError, "class representative length mismatch");
    double scale = 0;
    for (double v : class_values) scale = std::max(scale, std::abs(v));
    if (coboundary_max(c, Cochain{1, class_values}) > 1e-9 * std::max(1.0, scale))
        fail(ErrorCode::NotClosed, "class representative is not closed");
    if (!cover.trivial)
        for (int e = 0; e < (int)c.edges.size(); ++e)
            if (class_values[e] != -class_values[cover.tau[1][e]])
                fail(ErrorCode::InputError, "class representative is not anti-invariant");

    PotentialProjector proj(cover);
    int n = c.n_vertices;
    std::vector<double> b(n, 0.0);
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        double f = weights.edge_w[e] * class_values[e];
        b[c.edges[e][1]] -= f;
        b[c.edges[e][0]] += f;
    }
    proj.apply(b);

    std::vector<double> diag(n, 0.0);
    for (int e = 0; e < (int)c.edges.size(); ++e) {
        diag[c.edges[e][0]] += weights.edge_w[e];
        diag[c.edges[e][1]] += weights.edge_w[e];
    }
    auto matvec = [&](const std::vector<double>& x, std::vector<double>& y) {
        std::fill(y.begin(), y.end(), 0.0);
        for (int e = 0; e < (int)c.edges.size(); ++e) {
            double d = weights.edge_w[e] * (x[c.edges[e][1]] - x[c.edges[e][0]]);
            y[c.edges[e][1]] += d;
            y[c.edges[e][0]] -= d;
        }
        proj.apply(y);
    };

    std::vector<double> x(n, 0.0);
    if (opts.start_seed) {
        std::mt19937_64 rng(opts.start_seed);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (auto& v : x) v = dist(rng);
        proj.apply(x);
    }

    double b_norm = 0;
    for (double v : b) b_norm += v * v;
    b_norm = std::sqrt(b_norm);
    int iters = 0;
    if (b_norm > 0) {
        std::vector<double> r(n), z(n), p(n), ap(n);
        matvec(x, ap);
        for (int v = 0; v < n; ++v) r[v] = b[v] - ap[v];
        auto precond = [&](const std::vector<double>& rr, std::vector<double>& zz) {
            for (int v = 0; v < n; ++v) zz[v] = diag[v] > 0 ? rr[v] / diag[v] : rr[v];
            proj.apply(zz);
        };
        precond(r, z);
        p = z;
        double rz = 0;
        for (int v = 0; v < n; ++v) rz += r[v] * z[v];
        int cap = std::max(16, opts.iteration_cap_factor * n);
        for (iters = 0; iters < cap; ++iters) {
            double rn = 0;
            for (int v = 0; v < n; ++v) rn += r[v] * r[v];
            if (std::sqrt(rn) <= opts.tolerance * b_norm) break;
            matvec(p, ap);
            double pap = 0;
            for (int v = 0; v < n; ++v) pap += p[v] * ap[v];
            if (pap <= 0) break;  // projected out direction
            double alpha = rz / pap;
            for (int v = 0; v < n; ++v) {
                x[v] += alpha * p[v];
                r[v] -= alpha * ap[v];
            }
            precond(r, z);
            double rz2 = 0;
            for (int v = 0; v < n; ++v) rz2 += r[v] * z[v];
            double beta = rz2 / rz;
            rz = rz2;
            for (int v = 0; v < n; ++v) p[v] = z[v] + beta * p[v];
        }
        double rn = 0;
        for (int v = 0; v < n; ++v) rn += r[v] * r[v];
        if (std::sqrt(rn) > opts.tolerance * b_norm) {
            fail(ErrorCode::ConvergenceError,
                 "conjugate gradient did not converge; final relative residual " +
                     std::to_string(std::sqrt(rn) / b_norm));
        }
        proj.apply(x);
    }

    HarmonicForm out;
    out.class_values = class_values;
    out.potential = x;
    out.values.resize(c.edges.size());
    for (int e = 0; e < (int)c.edges.size(); ++e)
        out.values[e] = class_values[e] + (x[c.edges[e][1]] - x[c.edges[e][0]]);
    out.residual_norm = residual(cover, weights, out.values);
    out.cg_iterations = iters;
    out.weights_kind = weights.kind;
    auto chords = fundamental_cycles(c);
    Cochain q{1, class_values};
    out.chord_periods = periods(c, q, chords);
    return out;
}

HarmonicForm harmonic_representative(const BranchedCover& cover, const MetricWeights& weights,
                                     const AntiInvariantBasis& basis,
                                     const std::vector<long long>& coefficients,
                                     const SolverOptions& opts) {
    if (coefficients.size() != (size_t)basis.dim())
        fail(ErrorCode::InputError, "coefficient count does not match the basis dimension");
    std::vector<double> cls(cover.complex.edges.size(), 0.0);
    for (int i = 0; i < basis.dim(); ++i)
        for (int e = 0; e < (int)cls.size(); ++e)
            cls[e] += (double)(coefficients[i] * basis.cover_cochains[i][e]);
    return harmonic_representative_of(cover, weights, cls, opts);
}

}  // namespace z2f
