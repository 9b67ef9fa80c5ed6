#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "z2f/hodge.hpp"
#include "z2f/presets.hpp"

using namespace z2f;

namespace {

// constant-form edge integrals of dx on the grid torus
std::vector<double> dx_cochain(const CellComplex& torus, int n) {
    std::vector<double> vals(torus.edges.size());
    for (int e = 0; e < (int)torus.edges.size(); ++e) {
        int a = torus.edges[e][0], b = torus.edges[e][1];
        int ia = a / n, ib = b / n;
        int d = ib - ia;
        if (d > n / 2) d -= n;
        if (d < -n / 2) d += n;
        vals[e] = (double)d / n;
    }
    return vals;
}

}  // namespace

TEST_CASE("zero class gives the zero form") {
    auto cov = BranchedCover::identity(presets::torus_grid(4));
    auto w = uniform_weights(cov);
    std::vector<double> zero(cov.complex.edges.size(), 0.0);
    auto h = harmonic_representative_of(cov, w, zero);
    CHECK(h.residual_norm == 0.0);
    for (double v : h.values) CHECK(v == 0.0);
}

TEST_CASE("flat torus: constant form is already harmonic and is the minimizer") {
    int n = 8;
    auto torus = presets::torus_grid(n);
    auto cov = BranchedCover::identity(torus);
    auto w = uniform_weights(cov);
    auto dx = dx_cochain(torus, n);
    auto h = harmonic_representative_of(cov, w, dx);
    CHECK(h.residual_norm < 1e-10);
    for (int e = 0; e < (int)dx.size(); ++e)
        CHECK(h.values[e] == doctest::Approx(dx[e]).epsilon(1e-12));
    // periods on fundamental cycles are integers (0 or +-1)
    for (double p : h.chord_periods) {
        double r = std::round(p);
        CHECK(std::abs(p - r) < 1e-12);
    }
}

TEST_CASE("solver agrees with a dense least-squares oracle on a small torus") {
    int n = 4;
    auto torus = presets::torus_grid(n);
    auto cov = BranchedCover::identity(torus);
    auto w = uniform_weights(cov);
    auto cb = cocycle_basis(torus);
    std::vector<double> cls(torus.edges.size());
    for (size_t e = 0; e < cls.size(); ++e)
        cls[e] = (double)(cb.cochains[0][e] + 2 * cb.cochains[1][e]);
    auto h = harmonic_representative_of(cov, w, cls);

    // oracle: minimize ||cls + d phi||^2 densely
    int V = torus.n_vertices, E = (int)torus.edges.size();
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(E, V);
    Eigen::VectorXd c(E);
    for (int e = 0; e < E; ++e) {
        D(e, torus.edges[e][1]) += 1;
        D(e, torus.edges[e][0]) -= 1;
        c(e) = cls[e];
    }
    Eigen::MatrixXd L = D.transpose() * D;
    Eigen::VectorXd rhs = -D.transpose() * c;
    // pin the mean by least squares solve
    Eigen::VectorXd phi = L.completeOrthogonalDecomposition().solve(rhs);
    Eigen::VectorXd vals = c + D * phi;
    for (int e = 0; e < E; ++e) CHECK(h.values[e] == doctest::Approx(vals(e)).epsilon(1e-8));
}

TEST_CASE("residual matches a dense Laplacian oracle on coboundaries") {
    int n = 5;  // 25 vertices <= 50
    auto torus = presets::torus_grid(n);
    auto cov = BranchedCover::identity(torus);
    auto w = uniform_weights(cov);
    std::mt19937_64 rng(5);
    std::vector<double> phi(torus.n_vertices);
    for (auto& x : phi) x = std::uniform_real_distribution<>(-1, 1)(rng);
    std::vector<double> dphi(torus.edges.size());
    for (int e = 0; e < (int)torus.edges.size(); ++e)
        dphi[e] = phi[torus.edges[e][1]] - phi[torus.edges[e][0]];
    double r = residual(cov, w, dphi);

    int V = torus.n_vertices, E = (int)torus.edges.size();
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(E, V);
    for (int e = 0; e < E; ++e) {
        D(e, torus.edges[e][1]) += 1;
        D(e, torus.edges[e][0]) -= 1;
    }
    Eigen::VectorXd p(V);
    for (int v = 0; v < V; ++v) p(v) = phi[v];
    Eigen::VectorXd lap = D.transpose() * D * p;
    CHECK(r == doctest::Approx(lap.norm()).epsilon(1e-10));
}

TEST_CASE("residual scales quadratically in the edge weights") {
    int n = 4;
    auto torus = presets::torus_grid(n);
    auto cov = BranchedCover::identity(torus);
    auto w = uniform_weights(cov);
    std::mt19937_64 rng(9);
    std::vector<double> vals(torus.edges.size());
    for (auto& x : vals) x = std::uniform_real_distribution<>(-1, 1)(rng);
    double r1 = residual(cov, w, vals);
    for (auto& x : w.edge_w) x *= 2.0;
    double r2 = residual(cov, w, vals);
    CHECK(r2 * r2 == doctest::Approx(4.0 * r1 * r1).epsilon(1e-12));
}

TEST_CASE("anti-invariant projection fixed points") {
    auto p = presets::s3_unlink(2);
    auto eta = meridian_cocycle(p.complex, p.locus);
    auto cov = build_branched_cover(p.complex, p.locus, eta);
    std::mt19937_64 rng(17);
    // tau-invariant input projects to zero
    std::vector<double> inv(cov.complex.edges.size());
    for (int e = 0; e < (int)inv.size(); ++e) {
        int te = cov.tau[1][e];
        if (e <= te) inv[e] = std::uniform_real_distribution<>(-1, 1)(rng);
    }
    for (int e = 0; e < (int)inv.size(); ++e) {
        int te = cov.tau[1][e];
        if (e > te) inv[e] = inv[te];
    }
    for (double v : antiinvariant_project(cov, inv)) CHECK(v == doctest::Approx(0.0));
    // anti-invariant input is unchanged
    auto basis = antiinvariant_cohomology(cov);
    std::vector<double> anti(basis.cover_cochains[0].begin(), basis.cover_cochains[0].end());
    auto pr = antiinvariant_project(cov, anti);
    for (int e = 0; e < (int)anti.size(); ++e) CHECK(pr[e] == anti[e]);
}

TEST_CASE("harmonic representative on a genuine branched cover") {
    auto p = presets::s3_unlink(2);
    auto eta = meridian_cocycle(p.complex, p.locus);
    auto cov = build_branched_cover(p.complex, p.locus, eta);
    auto basis = antiinvariant_cohomology(cov);
    REQUIRE(basis.dim() == 1);
    auto w = uniform_weights(cov);
    auto h = harmonic_representative(cov, w, basis, {1});
    CHECK(h.residual_norm < 1e-9);
    // anti-invariance of materialized values is exact
    for (int e = 0; e < (int)h.values.size(); ++e)
        CHECK(h.values[e] == -h.values[cov.tau[1][e]]);
    // periods of the output equal the class periods (structural identity)
    Cochain qc{1, h.class_values};
    auto chords = fundamental_cycles(cov.complex);
    auto ps = periods(cov.complex, qc, chords);
    for (size_t i = 0; i < ps.size(); ++i) CHECK(ps[i] == h.chord_periods[i]);

    // two solver starts agree edgewise
    SolverOptions o2;
    o2.start_seed = 424242;
    auto h2 = harmonic_representative(cov, w, basis, {1}, o2);
    for (int e = 0; e < (int)h.values.size(); ++e)
        CHECK(h.values[e] == doctest::Approx(h2.values[e]).epsilon(1e-8));
}

TEST_CASE("energy minimality against random admissible perturbations") {
    auto p = presets::s3_unlink(2);
    auto eta = meridian_cocycle(p.complex, p.locus);
    auto cov = build_branched_cover(p.complex, p.locus, eta);
    auto basis = antiinvariant_cohomology(cov);
    auto w = uniform_weights(cov);
    auto h = harmonic_representative(cov, w, basis, {1});
    double e0 = h.energy(w);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> phi(cov.complex.n_vertices, 0.0);
        for (int v = 0; v < cov.complex.n_vertices; ++v) {
            int tv = cov.tau[0][v];
            if (tv == v) continue;
            if (v < tv) {
                double a = std::uniform_real_distribution<>(-0.3, 0.3)(rng);
                phi[v] = a;
                phi[tv] = -a;
            }
        }
        HarmonicForm pert = h;
        for (int e = 0; e < (int)pert.values.size(); ++e)
            pert.values[e] =
                h.values[e] + (phi[cov.complex.edges[e][1]] - phi[cov.complex.edges[e][0]]);
        CHECK(pert.energy(w) >= e0 - 1e-12);
    }
}

TEST_CASE("cotan weights on the grid torus keep the constant form harmonic") {
    int n = 8;
    auto torus = presets::torus_grid(n);
    auto cov = BranchedCover::identity(torus);
    auto w = cotan_weights(cov);
    w.validate(cov);
    auto dx = dx_cochain(torus, n);
    auto h = harmonic_representative_of(cov, w, dx);
    CHECK(h.residual_norm < 1e-10);
    for (int e = 0; e < (int)dx.size(); ++e)
        CHECK(h.values[e] == doctest::Approx(dx[e]).epsilon(1e-10));
}

TEST_CASE("convergence error reports the final residual") {
    auto torus = presets::torus_grid(6);
    auto cov = BranchedCover::identity(torus);
    auto w = uniform_weights(cov);
    auto cb = cocycle_basis(torus);
    std::vector<double> cls(torus.edges.size());
    for (size_t e = 0; e < cls.size(); ++e) cls[e] = (double)cb.cochains[0][e];
    SolverOptions opts;
    opts.iteration_cap_factor = 0;  // cap of 16 iterations, too few
    opts.tolerance = 1e-15;
    try {
        harmonic_representative_of(cov, w, cls, opts);
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::ConvergenceError);
        CHECK(std::string(err.what()).find("residual") != std::string::npos);
    }
}
