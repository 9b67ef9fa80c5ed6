#pragma once

#include <string>
#include <vector>

#include "z2f/cover.hpp"
#include "z2f/intmat.hpp"

namespace z2f {

// Diagonal inner products on the cover: one positive weight per edge and per
// vertex, invariant under the deck involution.
struct MetricWeights {
    std::vector<double> edge_w;
    std::vector<double> vertex_w;
    std::string kind;  // "uniform", "cotan", "file", ...

    void validate(const BranchedCover& cover) const;
};

MetricWeights uniform_weights(const BranchedCover& cover);
// cotangent weights computed on the base (needs positions) pulled back to
// the cover; non-positive dual entries fall back to the combinatorial weight
MetricWeights cotan_weights(const BranchedCover& cover);

// weighted divergence norm: sqrt(sum_v (sum_{e at v} +-w_e c_e)^2 / vw_v)
double residual(const BranchedCover& cover, const MetricWeights& w,
                const std::vector<double>& cochain, bool skip_branch = true);

// Harmonic representative of an anti-invariant class. Kept as a class part
// plus a potential so closedness, anti-invariance and periods stay
// structural: the materialized values never feed back into them.
struct HarmonicForm {
    std::vector<double> class_values;  // closed anti-invariant cochain (exact by provenance)
    std::vector<double> potential;     // anti-invariant vertex potential
    std::vector<double> values;        // class + d(potential)
    double residual_norm = 0;
    int cg_iterations = 0;
    std::string weights_kind;

    // periods of the class part over the cover's fundamental cycles
    std::vector<double> chord_periods;

    double energy(const MetricWeights& w) const;
};

struct SolverOptions {
    double tolerance = 1e-10;
    int iteration_cap_factor = 10;  // cap = factor * vertex count
    uint64_t start_seed = 0;        // 0: zero start, else random start
};

// energy-minimizing representative of sum_i coefficients[i] * basis[i]
HarmonicForm harmonic_representative(const BranchedCover& cover, const MetricWeights& weights,
                                     const AntiInvariantBasis& basis,
                                     const std::vector<long long>& coefficients,
                                     const SolverOptions& opts = {});

// same, for an explicit closed anti-invariant representative on cover edges
HarmonicForm harmonic_representative_of(const BranchedCover& cover, const MetricWeights& weights,
                                        const std::vector<double>& class_values,
                                        const SolverOptions& opts = {});

}  // namespace z2f
