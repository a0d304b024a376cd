// Applications of the logic Bell-state analyzer: teleportation of an
// arbitrary logic qubit over a width-m logic Bell channel, and entanglement
// swapping between two logic Bell pairs.
//
// Logical corrections on an m-qubit GHZ block:
//   logical X  =  Z on a single qubit   (swaps GHZ+ and GHZ-)
//   logical Z  =  X on all m qubits     (fixes GHZ+, negates GHZ-)
// Both identities are unit-tested against hand expansions.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cghz/analyzer.hpp"
#include "cghz/encodings.hpp"
#include "cghz/statevec.hpp"

namespace cghz {

/// Physical operations repairing one analyzer outcome, as (gate, qubit offset
/// within the target block) pairs in application order.
struct Correction {
    std::vector<std::pair<GateKind, int>> ops;
};

/// Correction turning each measured logic Bell outcome back into the
/// Phi+ branch content: Phi+ -> nothing, Phi- -> logical Z, Psi+ -> logical X,
/// Psi- -> logical X then logical Z.
inline Correction correction_for(LogicBellLabel outcome, int m) {
    Correction c;
    const auto logical_x = [&] { c.ops.emplace_back(GateKind::Z, 0); };
    const auto logical_z = [&] {
        for (int j = 0; j < m; ++j) c.ops.emplace_back(GateKind::X, j);
    };
    switch (outcome) {
        case LogicBellLabel::PhiPlus: break;
        case LogicBellLabel::PhiMinus: logical_z(); break;
        case LogicBellLabel::PsiPlus: logical_x(); break;
        case LogicBellLabel::PsiMinus:
            logical_x();
            logical_z();
            break;
    }
    return c;
}

/// Apply a correction to the block starting at `block_first` (in place).
inline StateVector& apply_correction(StateVector& s, const Correction& c, int block_first) {
    for (const auto& [gate, offset] : c.ops) apply_1q(s, gate, block_first + offset);
    return s;
}

/// One branch of a teleportation run. pre_state/post_state are Bob's m-qubit
/// block before and after the correction; fidelity compares post_state with
/// the logic qubit Alice sent.
struct TeleportResult {
    LogicBellLabel outcome;
    Correction correction;
    StateVector pre_state;
    StateVector post_state;
    double fidelity = 0.0;
    double probability = 0.0;
};

/// Teleport alpha*GHZ+_m + beta*GHZ-_m from Alice (block A) to Bob (block C)
/// over a Phi+-type logic Bell channel on blocks B, C. The logic Bell
/// measurement on A, B is the width-m analyzer pipeline.
inline std::vector<TeleportResult> teleport(const LogicQubitCoeffs& c, int m,
                                            const MeasurePolicy& policy,
                                            int max_qubits = default_max_qubits) {
    if (m < 2) throw layout_error("teleport: need m >= 2");
    if (3 * m > max_qubits)
        throw capacity_error("teleport: " + std::to_string(3 * m) + " qubits exceeds cap " +
                             std::to_string(max_qubits));
    const StateVector message = make_logic_qubit(c, m, max_qubits);
    const BlockLayout pair_layout(2, m, max_qubits);
    const StateVector channel = make_cghz({pair_layout, 1, GhzSign::Plus}, max_qubits);
    const StateVector whole = tensor(message, channel, max_qubits);

    std::vector<TeleportResult> out;
    for (RegionAnalysis& ra : analyze_blocks(whole, 0, pair_layout, policy)) {
        TeleportResult tr;
        tr.outcome = cghz_to_logic_bell(ra.result.label);
        tr.correction = correction_for(tr.outcome, m);
        tr.pre_state = std::move(ra.remainder);
        tr.post_state = tr.pre_state;
        apply_correction(tr.post_state, tr.correction, 0);
        tr.fidelity = fidelity(tr.post_state, message);
        tr.probability = ra.result.probability;
        out.push_back(std::move(tr));
    }
    return out;
}

/// One branch of an entanglement-swapping run. ad_state is the joint state of
/// blocks A and D before correction; fidelity_after_correction compares the
/// corrected state (correction applied to block D) with the Phi+-type logic
/// Bell state.
struct SwapResult {
    LogicBellLabel outcome;
    Correction correction;
    StateVector ad_state;
    double fidelity_after_correction = 0.0;
    double probability = 0.0;
};

/// Swap entanglement between logic Bell pairs AB and CD by measuring blocks
/// B, C with the width-m analyzer; blocks A, D end up logic-Bell entangled.
inline std::vector<SwapResult> entanglement_swap(int m, const MeasurePolicy& policy,
                                                 int max_qubits = default_max_qubits) {
    if (m < 2) throw layout_error("entanglement_swap: need m >= 2");
    if (4 * m > max_qubits)
        throw capacity_error("entanglement_swap: " + std::to_string(4 * m) +
                             " qubits exceeds cap " + std::to_string(max_qubits));
    const BlockLayout pair_layout(2, m, max_qubits);
    const StateVector phi_plus = make_cghz({pair_layout, 1, GhzSign::Plus}, max_qubits);
    const StateVector whole = tensor(phi_plus, phi_plus, max_qubits);  // A B | C D

    std::vector<SwapResult> out;
    for (RegionAnalysis& ra : analyze_blocks(whole, m, pair_layout, policy)) {
        SwapResult sr;
        sr.outcome = cghz_to_logic_bell(ra.result.label);
        sr.correction = correction_for(sr.outcome, m);
        sr.ad_state = std::move(ra.remainder);
        StateVector corrected = sr.ad_state;
        apply_correction(corrected, sr.correction, m);  // block D
        sr.fidelity_after_correction = fidelity(corrected, phi_plus);
        sr.probability = ra.result.probability;
        out.push_back(std::move(sr));
    }
    return out;
}

}  // namespace cghz
