// Measurement circuits over C-GHZ registers.
//
// lbsa            -- the four-qubit logic Bell-state analyzer.
// reduce_blocks   -- shrinks every m-qubit block to 2 qubits by measuring the
//                    trailing m-2 qubits in the X basis, with a per-block Z
//                    correction on odd parity.
// analyze_cghz    -- full discriminator: block reduction, block-level CNOT +
//                    discard, a CNOT chain across blocks, and N final
//                    measurements decoded to a CghzLabel.
// analyzer_circuit -- the same pipeline as a textual gate list.
//
// Every circuit requires its input inside the relevant C-GHZ span (checked by
// projection; residual above span_residual_tol raises subspace_error). An
// in-span input also guarantees each DISCARD step removes a product qubit.
//
// Block-reduction outcomes never reach the decoded label: a block whose
// measured bits have odd parity has its GHZ sign swapped, and the recorded Z
// correction on the surviving second-in-block qubit swaps it back. Because of
// this, result probabilities are conditioned on the reduction record (for a
// basis-state input the single result reports probability 1), and BranchAll
// resolves the reduction to the all-zeros record while enumerating only the
// information-bearing final measurements.

#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cghz/encodings.hpp"
#include "cghz/statevec.hpp"

namespace cghz {

/// Inputs whose projection residual onto the analyzed span exceeds this are
/// rejected.
inline constexpr double span_residual_tol = 1e-10;

/// Audit trail of one block-reduction pass.
struct FlipRecord {
    std::vector<std::vector<int>> outcomes;  // per block, the m-2 measured bits
    std::vector<int> parity;                 // f_i = XOR of block i's bits
    std::vector<int> corrected_qubits;       // flat indices that received Z

    bool any_correction() const { return !corrected_qubits.empty(); }
};

/// Decoded outcome of an analyzer run.
struct AnalysisResult {
    CghzLabel label;
    int sign_bit = 0;
    std::vector<int> diff_bits;
    FlipRecord flips;
    double probability = 0.0;
};

/// Map raw analyzer bits (sign bit first, then the N-1 difference bits) to a
/// label. The flips are audit data only; reduce_blocks already applied their
/// corrections physically.
inline CghzLabel decode(const BlockLayout& layout, const std::vector<int>& bits,
                        const FlipRecord& flips) {
    if (static_cast<int>(bits.size()) != layout.blocks)
        throw dimension_error("decode: expected " + std::to_string(layout.blocks) +
                              " bits, got " + std::to_string(bits.size()));
    if (static_cast<int>(flips.parity.size()) != layout.blocks)
        throw dimension_error("decode: flip record covers " +
                              std::to_string(flips.parity.size()) + " blocks, expected " +
                              std::to_string(layout.blocks));
    const std::vector<int> diff(bits.begin() + 1, bits.end());
    return {layout, k_for_diff(diff), bits[0] ? GhzSign::Minus : GhzSign::Plus};
}

/// Residual of `s` outside span{ C-GHZ basis on qubits [first_qubit,
/// first_qubit + N*m) } tensor anything on the remaining qubits.
inline double cghz_span_residual(const StateVector& s, int first_qubit,
                                 const BlockLayout& layout) {
    const int width = layout.n_qubits();
    if (first_qubit < 0 || first_qubit + width > s.n)
        throw dimension_error("cghz_span_residual: region [" + std::to_string(first_qubit) +
                              ", " + std::to_string(first_qubit + width) +
                              ") outside register of " + std::to_string(s.n) + " qubits");
    const std::uint64_t region_dim = std::uint64_t(1) << width;
    const std::uint64_t rest_dim = s.dim() >> width;
    const std::uint64_t low_mask = (std::uint64_t(1) << first_qubit) - 1;
    double total = 0.0;
    for (int k = 1; k <= (1 << (layout.blocks - 1)); ++k) {
        for (GhzSign sign : {GhzSign::Plus, GhzSign::Minus}) {
            const StateVector phi = make_cghz({layout, k, sign}, width);
            for (std::uint64_t sc = 0; sc < rest_dim; ++sc) {
                const std::uint64_t lo = sc & low_mask;
                const std::uint64_t hi = (sc >> first_qubit) << (first_qubit + width);
                cpx acc(0.0, 0.0);
                for (std::uint64_t rc = 0; rc < region_dim; ++rc)
                    acc += std::conj(phi.amps[rc]) * s.amps[hi | (rc << first_qubit) | lo];
                total += std::norm(acc);
            }
        }
    }
    return 1.0 - total;
}

inline double cghz_span_residual(const StateVector& s, const BlockLayout& layout) {
    if (s.n != layout.n_qubits())
        throw dimension_error("cghz_span_residual: state has " + std::to_string(s.n) +
                              " qubits, layout needs " + std::to_string(layout.n_qubits()));
    return cghz_span_residual(s, 0, layout);
}

namespace detail {

/// Live mapping from original flat qubit indices to current positions as
/// discards shrink the register.
class QubitTracker {
  public:
    explicit QubitTracker(int n) : pos_(n) { std::iota(pos_.begin(), pos_.end(), 0); }

    int at(int orig) const { return pos_[orig]; }

    void drop(int orig) {
        const int c = pos_[orig];
        for (int& p : pos_) {
            if (p > c) --p;
        }
        pos_[orig] = -1;
    }

  private:
    std::vector<int> pos_;
};

/// H + computational-basis measurement + discard of the trailing m-2 qubits
/// of every block, then Z on the second-in-block qubit of odd-parity blocks.
/// `forced` (when non-null) pins each outcome; otherwise the policy decides
/// (BranchAll pins zeros -- see file comment).
inline FlipRecord run_block_reduction(StateVector& state, QubitTracker& tracker,
                                      int first_qubit, const BlockLayout& layout,
                                      const MeasurePolicy& policy,
                                      const std::vector<std::vector<int>>* forced,
                                      SplitMix64& rng) {
    const int N = layout.blocks;
    const int m = layout.qubits_per_block;
    if (forced) {
        if (static_cast<int>(forced->size()) != N)
            throw argument_error("reduce_blocks: forced outcomes cover " +
                                 std::to_string(forced->size()) + " blocks, expected " +
                                 std::to_string(N));
        for (const auto& row : *forced)
            if (static_cast<int>(row.size()) != m - 2)
                throw argument_error("reduce_blocks: each block needs " +
                                     std::to_string(m - 2) + " forced outcomes");
    }

    FlipRecord flips;
    flips.outcomes.resize(N);
    flips.parity.assign(N, 0);
    for (int i = 0; i < N; ++i) {
        for (int off = 2; off < m; ++off) {
            const int orig = first_qubit + i * m + off;
            const int q = tracker.at(orig);
            apply_1q(state, GateKind::H, q);
            MeasurementBranch branch;
            if (forced) {
                branch = measure_postselect(state, q, (*forced)[i][off - 2]);
            } else {
                switch (policy.kind) {
                    case MeasurePolicy::Kind::sample:
                        branch = measure_sampled(state, q, rng);
                        break;
                    case MeasurePolicy::Kind::post_select:
                        branch = measure_postselect(state, q, policy.bit);
                        break;
                    case MeasurePolicy::Kind::branch_all:
                    default:
                        branch = measure_postselect(state, q, 0);
                        break;
                }
            }
            flips.outcomes[i].push_back(branch.outcome);
            flips.parity[i] ^= branch.outcome;
            state = discard_qubit(branch.post_state, q);
            tracker.drop(orig);
        }
        if (flips.parity[i]) {
            const int zq = first_qubit + i * m + 1;
            apply_1q(state, GateKind::Z, tracker.at(zq));
            flips.corrected_qubits.push_back(zq);
        }
    }
    return flips;
}

struct MeasuredFront {
    StateVector state;
    std::vector<int> bits;
    double probability = 1.0;
};

/// Measure `positions` in order under the policy. Sample and PostSelect keep
/// one front; BranchAll fans out (zero-probability branches pruned). The
/// reported probability is the joint probability of the recorded bits.
inline std::vector<MeasuredFront> enumerate_measurements(StateVector&& state,
                                                         const std::vector<int>& positions,
                                                         const MeasurePolicy& policy,
                                                         SplitMix64& rng) {
    std::vector<MeasuredFront> fronts;
    fronts.push_back({std::move(state), {}, 1.0});
    for (int q : positions) {
        std::vector<MeasuredFront> next;
        for (MeasuredFront& f : fronts) {
            if (policy.kind == MeasurePolicy::Kind::branch_all) {
                for (MeasurementBranch& b :
                     measure_qubit(f.state, q, MeasurePolicy::branch_all())) {
                    MeasuredFront g;
                    g.state = std::move(b.post_state);
                    g.bits = f.bits;
                    g.bits.push_back(b.outcome);
                    g.probability = f.probability * b.probability;
                    next.push_back(std::move(g));
                }
            } else {
                MeasurementBranch b = policy.kind == MeasurePolicy::Kind::sample
                                          ? measure_sampled(f.state, q, rng)
                                          : measure_postselect(f.state, q, policy.bit);
                f.bits.push_back(b.outcome);
                f.probability *= b.probability;
                f.state = std::move(b.post_state);
                next.push_back(std::move(f));
            }
        }
        fronts = std::move(next);
    }
    return fronts;
}

}  // namespace detail

/// Shrink every block of `s` to 2 qubits. Returns the (N, 2)-layout state and
/// the reduction audit record. Outcomes are pinned by `forced` (one row of
/// m-2 bits per block).
inline std::pair<StateVector, FlipRecord> reduce_blocks(
    const StateVector& s, const BlockLayout& layout,
    const std::vector<std::vector<int>>& forced) {
    if (s.n != layout.n_qubits())
        throw dimension_error("reduce_blocks: state has " + std::to_string(s.n) +
                              " qubits, layout needs " + std::to_string(layout.n_qubits()));
    const double residual = cghz_span_residual(s, layout);
    if (residual > span_residual_tol)
        throw subspace_error("reduce_blocks: input outside the C-GHZ span (residual " +
                                 std::to_string(residual) + ")",
                             residual);
    StateVector state = s;
    detail::QubitTracker tracker(s.n);
    SplitMix64 rng(0);
    FlipRecord flips = detail::run_block_reduction(state, tracker, 0, layout,
                                                   MeasurePolicy::branch_all(), &forced, rng);
    return {std::move(state), std::move(flips)};
}

/// Policy-driven overload; Sample(seed) draws the reduction trajectory.
inline std::pair<StateVector, FlipRecord> reduce_blocks(const StateVector& s,
                                                        const BlockLayout& layout,
                                                        const MeasurePolicy& policy) {
    if (s.n != layout.n_qubits())
        throw dimension_error("reduce_blocks: state has " + std::to_string(s.n) +
                              " qubits, layout needs " + std::to_string(layout.n_qubits()));
    const double residual = cghz_span_residual(s, layout);
    if (residual > span_residual_tol)
        throw subspace_error("reduce_blocks: input outside the C-GHZ span (residual " +
                                 std::to_string(residual) + ")",
                             residual);
    StateVector state = s;
    detail::QubitTracker tracker(s.n);
    SplitMix64 rng(policy.seed);
    FlipRecord flips =
        detail::run_block_reduction(state, tracker, 0, layout, policy, nullptr, rng);
    return {std::move(state), std::move(flips)};
}

/// One analyzer outcome over an embedded register region, with the
/// post-measurement state of the spectator qubits (empty when the region
/// covers the whole register).
struct RegionAnalysis {
    AnalysisResult result;
    StateVector remainder;
};

/// Run the full discriminator on blocks occupying [first_qubit, first_qubit +
/// N*m); qubits outside that region ride along and come back in `remainder`.
inline std::vector<RegionAnalysis> analyze_blocks(const StateVector& s, int first_qubit,
                                                  const BlockLayout& layout,
                                                  const MeasurePolicy& policy) {
    const int N = layout.blocks;
    const int m = layout.qubits_per_block;
    const double residual = cghz_span_residual(s, first_qubit, layout);
    if (residual > span_residual_tol)
        throw subspace_error("analyze: input outside the C-GHZ span (residual " +
                                 std::to_string(residual) + ")",
                             residual);

    StateVector state = s;
    detail::QubitTracker tracker(s.n);
    SplitMix64 rng(policy.seed);

    const FlipRecord flips =
        detail::run_block_reduction(state, tracker, first_qubit, layout, policy, nullptr, rng);

    // Block-level stage: X-basis rotation, in-block CNOT, drop the now-free
    // first-in-block qubits.
    for (int i = 0; i < N; ++i) {
        apply_1q(state, GateKind::H, tracker.at(first_qubit + i * m));
        apply_1q(state, GateKind::H, tracker.at(first_qubit + i * m + 1));
    }
    for (int i = 0; i < N; ++i)
        apply_cnot(state, tracker.at(first_qubit + i * m), tracker.at(first_qubit + i * m + 1));
    for (int i = 0; i < N; ++i) {
        const int orig = first_qubit + i * m;
        state = discard_qubit(state, tracker.at(orig));
        tracker.drop(orig);
    }

    // CNOT chain over the surviving qubits, rightmost pair first, then the
    // X-basis read-out rotation on the first survivor.
    for (int l = N - 1; l >= 1; --l)
        apply_cnot(state, tracker.at(first_qubit + (l - 1) * m + 1),
                   tracker.at(first_qubit + l * m + 1));
    apply_1q(state, GateKind::H, tracker.at(first_qubit + 1));

    std::vector<int> final_positions;
    final_positions.reserve(N);
    for (int i = 0; i < N; ++i) final_positions.push_back(tracker.at(first_qubit + i * m + 1));

    std::vector<detail::MeasuredFront> fronts =
        detail::enumerate_measurements(std::move(state), final_positions, policy, rng);

    const bool have_spectators = s.n > N * m;
    std::vector<RegionAnalysis> out;
    out.reserve(fronts.size());
    for (detail::MeasuredFront& f : fronts) {
        RegionAnalysis ra{{decode(layout, f.bits, flips), f.bits[0],
                           std::vector<int>(f.bits.begin() + 1, f.bits.end()), flips,
                           f.probability},
                          StateVector{}};
        if (have_spectators) {
            std::vector<int> positions = final_positions;
            std::sort(positions.begin(), positions.end(), std::greater<int>());
            StateVector rem = std::move(f.state);
            for (int c : positions) rem = discard_qubit(rem, c);
            ra.remainder = std::move(rem);
        }
        out.push_back(std::move(ra));
    }
    return out;
}

/// Discriminate a full-register C-GHZ state. One result per decoded label;
/// under BranchAll the probabilities are the exact outcome distribution.
inline std::vector<AnalysisResult> analyze_cghz(const StateVector& s, const BlockLayout& layout,
                                                const MeasurePolicy& policy) {
    if (s.n != layout.n_qubits())
        throw dimension_error("analyze_cghz: state has " + std::to_string(s.n) +
                              " qubits, layout needs " + std::to_string(layout.n_qubits()));
    std::vector<RegionAnalysis> region = analyze_blocks(s, 0, layout, policy);
    std::vector<AnalysisResult> out;
    out.reserve(region.size());
    for (RegionAnalysis& ra : region) out.push_back(std::move(ra.result));
    return out;
}

/// Four-qubit logic Bell-state analyzer (register order a1 a2 b1 b2).
/// Decodes a2 b2 measurement bits as 00 -> Phi+, 10 -> Phi-, 01 -> Psi+,
/// 11 -> Psi-.
inline std::vector<AnalysisResult> lbsa(const StateVector& s, const MeasurePolicy& policy) {
    if (s.n != 4) throw dimension_error("lbsa: expects a 4-qubit register");
    double in_span = 0.0;
    for (LogicBellLabel label : {LogicBellLabel::PhiPlus, LogicBellLabel::PhiMinus,
                                 LogicBellLabel::PsiPlus, LogicBellLabel::PsiMinus})
        in_span += fidelity(make_logic_bell(label), s);
    const double residual = 1.0 - in_span;
    if (residual > span_residual_tol)
        throw subspace_error("lbsa: input outside the logic Bell span (residual " +
                                 std::to_string(residual) + ")",
                             residual);

    StateVector state = s;
    for (int q = 0; q < 4; ++q) apply_1q(state, GateKind::H, q);
    apply_cnot(state, 0, 1);
    apply_cnot(state, 2, 3);
    state = discard_qubit(state, 0);  // a1
    state = discard_qubit(state, 1);  // b1 (shifted down by the first discard)
    apply_cnot(state, 0, 1);          // a2 -> b2
    apply_1q(state, GateKind::H, 0);

    SplitMix64 rng(policy.seed);
    std::vector<detail::MeasuredFront> fronts =
        detail::enumerate_measurements(std::move(state), {0, 1}, policy, rng);

    const BlockLayout layout(2, 2);
    FlipRecord flips;
    flips.outcomes.resize(2);
    flips.parity.assign(2, 0);
    std::vector<AnalysisResult> out;
    out.reserve(fronts.size());
    for (const detail::MeasuredFront& f : fronts)
        out.push_back({decode(layout, f.bits, flips), f.bits[0],
                       {f.bits[1]}, flips, f.probability});
    return out;
}

// ---------------------------------------------------------------------------
// Circuit export. One instruction per line, original flat qubit indices
// throughout, in the exact order the pipeline executes:
//   H <q>                      Hadamard
//   CNOT <c> <t>               controlled NOT
//   Z <q> if parity(<q list>)  feed-forward correction
//   M <q> -> <bit>             computational-basis measurement
//   DISCARD <q>                removal of a disentangled qubit
// Bit names: r<i>_<off> for block i's reduction outcomes, then `sign` and
// d1..d(N-1) for the final read-out.
// ---------------------------------------------------------------------------

inline std::vector<std::string> analyzer_circuit(const BlockLayout& layout) {
    const int N = layout.blocks;
    const int m = layout.qubits_per_block;
    std::vector<std::string> lines;
    const auto qs = [](int q) { return std::to_string(q); };

    if (m > 2) {
        for (int i = 0; i < N; ++i) {
            for (int off = 2; off < m; ++off) lines.push_back("H " + qs(i * m + off));
            for (int off = 2; off < m; ++off)
                lines.push_back("M " + qs(i * m + off) + " -> r" + std::to_string(i) + "_" +
                                std::to_string(off));
            std::string parity_args;
            for (int off = 2; off < m; ++off) {
                if (off > 2) parity_args += " ";
                parity_args += qs(i * m + off);
            }
            lines.push_back("Z " + qs(i * m + 1) + " if parity(" + parity_args + ")");
        }
    }
    for (int i = 0; i < N; ++i) {
        lines.push_back("H " + qs(i * m));
        lines.push_back("H " + qs(i * m + 1));
    }
    for (int i = 0; i < N; ++i) lines.push_back("CNOT " + qs(i * m) + " " + qs(i * m + 1));
    for (int i = 0; i < N; ++i) lines.push_back("DISCARD " + qs(i * m));
    for (int l = N - 1; l >= 1; --l)
        lines.push_back("CNOT " + qs((l - 1) * m + 1) + " " + qs(l * m + 1));
    lines.push_back("H " + qs(1));
    lines.push_back("M " + qs(1) + " -> sign");
    for (int i = 1; i < N; ++i)
        lines.push_back("M " + qs(i * m + 1) + " -> d" + std::to_string(i));
    return lines;
}

}  // namespace cghz
