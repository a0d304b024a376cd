// Brute-force reference: the full C-GHZ basis by construction and state
// decomposition by inner products. Certifies analyzer and protocol results
// through a path that never touches the circuit pipeline.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cghz/analyzer.hpp"
#include "cghz/encodings.hpp"
#include "cghz/statevec.hpp"

namespace cghz {

/// Projection of a state onto the C-GHZ basis. weights is ordered by
/// basis_index (k ascending, Plus before Minus); residual is the weight
/// outside the span.
struct BasisDecomposition {
    BlockLayout layout;
    std::vector<double> weights;
    double residual = 0.0;

    double weight(const CghzLabel& label) const { return weights[basis_index(label)]; }
    double weight(int k, GhzSign sign) const { return weights[basis_index(k, sign)]; }

    /// Label carrying the largest weight.
    CghzLabel dominant() const {
        int best = 0;
        for (int i = 1; i < static_cast<int>(weights.size()); ++i)
            if (weights[i] > weights[best]) best = i;
        return {layout, best / 2 + 1, best % 2 ? GhzSign::Minus : GhzSign::Plus};
    }
};

/// All 2^N basis states for a layout, in basis_index order.
inline std::vector<StateVector> cghz_basis(const BlockLayout& layout,
                                           int max_qubits = default_max_qubits) {
    if (layout.n_qubits() > max_qubits)
        throw capacity_error("cghz_basis: " + std::to_string(layout.n_qubits()) +
                             " qubits exceeds cap " + std::to_string(max_qubits));
    std::vector<StateVector> basis;
    basis.reserve(std::size_t(2) << (layout.blocks - 1));
    for (int k = 1; k <= (1 << (layout.blocks - 1)); ++k)
        for (GhzSign sign : {GhzSign::Plus, GhzSign::Minus})
            basis.push_back(make_cghz({layout, k, sign}, layout.n_qubits()));
    return basis;
}

/// weights[label] = |<Phi_label|s>|^2; residual = 1 - sum.
inline BasisDecomposition project_onto_basis(const StateVector& s, const BlockLayout& layout) {
    if (s.n != layout.n_qubits())
        throw dimension_error("project_onto_basis: state has " + std::to_string(s.n) +
                              " qubits, layout needs " + std::to_string(layout.n_qubits()));
    BasisDecomposition out{layout, {}, 0.0};
    out.weights.reserve(std::size_t(2) << (layout.blocks - 1));
    double total = 0.0;
    for (int k = 1; k <= (1 << (layout.blocks - 1)); ++k)
        for (GhzSign sign : {GhzSign::Plus, GhzSign::Minus}) {
            const double w =
                std::norm(inner_product(make_cghz({layout, k, sign}, layout.n_qubits()), s));
            out.weights.push_back(w);
            total += w;
        }
    out.residual = 1.0 - total;
    return out;
}

/// Random unit vector inside the C-GHZ span: standard-normal complex
/// coefficients over the basis, normalized.
inline StateVector random_in_span(const BlockLayout& layout, SplitMix64& rng,
                                  int max_qubits = default_max_qubits) {
    const std::vector<StateVector> basis = cghz_basis(layout, max_qubits);
    StateVector s = zero_state(layout.n_qubits(), max_qubits);
    s.amps[0] = cpx(0.0, 0.0);
    for (const StateVector& phi : basis) {
        const cpx c(rng.next_gaussian(), rng.next_gaussian());
        for (std::uint64_t i = 0; i < s.dim(); ++i) s.amps[i] += c * phi.amps[i];
    }
    return normalize(s);
}

/// Outcome of an analyzer-vs-oracle distribution sweep.
struct EquivalenceReport {
    int blocks = 0;
    int qubits_per_block = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    double max_deviation = 0.0;
};

/// Draw `trials` random in-span states, analyze each under BranchAll, and
/// report the worst disagreement between analyzer label probabilities and the
/// oracle projection weights. Trial t uses the derived seed (seed, t).
inline EquivalenceReport check_equivalence(const BlockLayout& layout, long trials,
                                           std::uint64_t seed,
                                           int max_qubits = default_max_qubits) {
    if (trials < 1) throw argument_error("check_equivalence: trials must be >= 1");
    if (layout.n_qubits() > max_qubits)
        throw capacity_error("check_equivalence: " + std::to_string(layout.n_qubits()) +
                             " qubits exceeds cap " + std::to_string(max_qubits));
    EquivalenceReport report{layout.blocks, layout.qubits_per_block, trials, seed, 0.0};
    for (long t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const StateVector s = random_in_span(layout, rng, max_qubits);
        const BasisDecomposition oracle = project_onto_basis(s, layout);

        std::vector<double> analyzer(oracle.weights.size(), 0.0);
        for (const AnalysisResult& r : analyze_cghz(s, layout, MeasurePolicy::branch_all()))
            analyzer[basis_index(r.label)] += r.probability;

        for (std::size_t i = 0; i < analyzer.size(); ++i) {
            const double dev = std::abs(analyzer[i] - oracle.weights[i]);
            if (dev > report.max_deviation) report.max_deviation = dev;
        }
    }
    return report;
}

}  // namespace cghz
