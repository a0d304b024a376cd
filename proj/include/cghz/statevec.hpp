// Dense state-vector engine: allocation, bit-masked gate kernels, measurement
// under three policies, qubit discarding, and inner products.
//
// Amplitude index convention (used by every module): little-endian, qubit i
// corresponds to bit i of the amplitude index. Bit 0 is the least significant.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "cghz/errors.hpp"
#include "cghz/rng.hpp"

namespace cghz {

using cpx = std::complex<double>;

/// Hard default on register width; overridable per call and via the CLI.
inline constexpr int default_max_qubits = 24;

/// Measurement branches below this probability are dropped (all probabilities
/// in these circuits are dyadic rationals, far above double noise).
inline constexpr double branch_prune_eps = 1e-14;

/// A discarded qubit must factor out with entanglement residual below this.
inline constexpr double discard_residual_tol = 1e-10;

inline constexpr double inv_sqrt2 = 0.70710678118654752440;

/// Normalized pure state over n qubits; 2^n complex amplitudes.
struct StateVector {
    int n = 0;
    std::vector<cpx> amps;

    std::uint64_t dim() const { return static_cast<std::uint64_t>(amps.size()); }

    double norm2() const {
        double s = 0.0;
        for (const cpx& a : amps) s += std::norm(a);
        return s;
    }
};

enum class GateKind { H, X, Z };

inline const char* gate_name(GateKind g) {
    switch (g) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        default: return "Z";
    }
}

/// How a measurement resolves its outcome.
///
/// Sample draws one branch from the SplitMix64 stream seeded by `seed`;
/// equal seeds give identical trajectories. BranchAll keeps every branch with
/// its exact probability. PostSelect forces the stated bit and fails if that
/// branch has (near-)zero probability.
struct MeasurePolicy {
    enum class Kind { sample, branch_all, post_select };

    Kind kind = Kind::branch_all;
    std::uint64_t seed = 0;
    int bit = 0;

    static MeasurePolicy sample(std::uint64_t seed) { return {Kind::sample, seed, 0}; }
    static MeasurePolicy branch_all() { return {Kind::branch_all, 0, 0}; }
    static MeasurePolicy post_select(int bit) { return {Kind::post_select, 0, bit}; }
};

/// One outcome of a single-qubit measurement. post_state is renormalized and
/// has the measured qubit in the definite computational state `outcome`.
struct MeasurementBranch {
    int outcome = 0;
    double probability = 0.0;
    StateVector post_state;
};

namespace detail {

inline void check_qubit(const StateVector& s, int q, const char* op) {
    if (q < 0 || q >= s.n)
        throw index_error(std::string(op) + ": qubit " + std::to_string(q) +
                          " out of range for " + std::to_string(s.n) + " qubits");
}

}  // namespace detail

/// |0...0> on n qubits.
inline StateVector zero_state(int n, int max_qubits = default_max_qubits) {
    if (n < 1 || n > max_qubits)
        throw capacity_error("zero_state: qubit count " + std::to_string(n) +
                             " outside [1, " + std::to_string(max_qubits) + "]");
    StateVector s;
    s.n = n;
    s.amps.assign(std::uint64_t(1) << n, cpx(0.0, 0.0));
    s.amps[0] = cpx(1.0, 0.0);
    return s;
}

/// Computational basis state |index> on n qubits.
inline StateVector basis_state(int n, std::uint64_t index,
                               int max_qubits = default_max_qubits) {
    StateVector s = zero_state(n, max_qubits);
    if (index >= s.dim())
        throw index_error("basis_state: index out of range");
    s.amps[0] = cpx(0.0, 0.0);
    s.amps[index] = cpx(1.0, 0.0);
    return s;
}

/// Rescale to unit norm. Throws if the state is numerically null.
inline StateVector& normalize(StateVector& s) {
    double n2 = s.norm2();
    if (n2 <= 0.0)
        throw normalization_error("normalize: null state");
    double inv = 1.0 / std::sqrt(n2);
    for (cpx& a : s.amps) a *= inv;
    return s;
}

/// Apply a named single-qubit gate in place over the (j, j | 2^q) stride pairs.
inline StateVector& apply_1q(StateVector& s, GateKind g, int q) {
    detail::check_qubit(s, q, "apply_1q");
    const std::uint64_t step = std::uint64_t(1) << q;
    const std::uint64_t dim = s.dim();
    cpx* a = s.amps.data();
    switch (g) {
        case GateKind::H:
            for (std::uint64_t base = 0; base < dim; base += 2 * step) {
                for (std::uint64_t low = 0; low < step; ++low) {
                    const std::uint64_t j = base | low;
                    const std::uint64_t k = j | step;
                    const cpx a0 = a[j];
                    const cpx a1 = a[k];
                    a[j] = (a0 + a1) * inv_sqrt2;
                    a[k] = (a0 - a1) * inv_sqrt2;
                }
            }
            break;
        case GateKind::X:
            for (std::uint64_t base = 0; base < dim; base += 2 * step)
                for (std::uint64_t low = 0; low < step; ++low) {
                    const std::uint64_t j = base | low;
                    std::swap(a[j], a[j | step]);
                }
            break;
        case GateKind::Z:
            for (std::uint64_t base = 0; base < dim; base += 2 * step)
                for (std::uint64_t low = 0; low < step; ++low)
                    a[(base | low) | step] = -a[(base | low) | step];
            break;
    }
    return s;
}

/// CNOT: basis states with the control bit set get the target bit flipped.
inline StateVector& apply_cnot(StateVector& s, int control, int target) {
    detail::check_qubit(s, control, "apply_cnot");
    detail::check_qubit(s, target, "apply_cnot");
    if (control == target)
        throw index_error("apply_cnot: control and target coincide (qubit " +
                          std::to_string(control) + ")");
    const std::uint64_t cmask = std::uint64_t(1) << control;
    const std::uint64_t tmask = std::uint64_t(1) << target;
    const std::uint64_t dim = s.dim();
    cpx* a = s.amps.data();
    for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & cmask) && !(i & tmask)) std::swap(a[i], a[i | tmask]);
    return s;
}

/// Probability of reading `outcome` on qubit q, by direct summation.
inline double outcome_probability(const StateVector& s, int q, int outcome) {
    detail::check_qubit(s, q, "outcome_probability");
    const std::uint64_t mask = std::uint64_t(1) << q;
    const std::uint64_t want = outcome ? mask : 0;
    double p = 0.0;
    for (std::uint64_t i = 0; i < s.dim(); ++i)
        if ((i & mask) == want) p += std::norm(s.amps[i]);
    return p;
}

namespace detail {

inline StateVector collapse(const StateVector& s, int q, int outcome, double prob) {
    const std::uint64_t mask = std::uint64_t(1) << q;
    const std::uint64_t want = outcome ? mask : 0;
    StateVector out;
    out.n = s.n;
    out.amps.assign(s.dim(), cpx(0.0, 0.0));
    const double inv = 1.0 / std::sqrt(prob);
    for (std::uint64_t i = 0; i < s.dim(); ++i)
        if ((i & mask) == want) out.amps[i] = s.amps[i] * inv;
    return out;
}

}  // namespace detail

/// Measure qubit q, drawing the outcome from an existing generator stream.
/// Pipelines thread one generator through all their sampled measurements so a
/// single seed fixes the whole trajectory.
inline MeasurementBranch measure_sampled(const StateVector& s, int q, SplitMix64& rng) {
    const double p0 = outcome_probability(s, q, 0);
    const double p1 = outcome_probability(s, q, 1);
    const int outcome = rng.next_double() < p0 ? 0 : 1;
    const double p = outcome ? p1 : p0;
    return {outcome, p, detail::collapse(s, q, outcome, p)};
}

/// Measure qubit q post-selecting the stated bit.
inline MeasurementBranch measure_postselect(const StateVector& s, int q, int bit) {
    const double p = outcome_probability(s, q, bit);
    if (p < branch_prune_eps)
        throw postselect_error("measure: post-selected outcome " + std::to_string(bit) +
                               " on qubit " + std::to_string(q) +
                               " has probability " + std::to_string(p));
    return {bit, p, detail::collapse(s, q, bit, p)};
}

/// Measure qubit q under a policy. BranchAll returns both branches (those with
/// probability below branch_prune_eps omitted); Sample and PostSelect return
/// exactly one branch.
inline std::vector<MeasurementBranch> measure_qubit(const StateVector& s, int q,
                                                    const MeasurePolicy& policy) {
    detail::check_qubit(s, q, "measure_qubit");
    switch (policy.kind) {
        case MeasurePolicy::Kind::sample: {
            SplitMix64 rng(policy.seed);
            return {measure_sampled(s, q, rng)};
        }
        case MeasurePolicy::Kind::post_select:
            return {measure_postselect(s, q, policy.bit)};
        case MeasurePolicy::Kind::branch_all:
        default: {
            std::vector<MeasurementBranch> branches;
            for (int outcome : {0, 1}) {
                const double p = outcome_probability(s, q, outcome);
                if (p < branch_prune_eps) continue;
                branches.push_back({outcome, p, detail::collapse(s, q, outcome, p)});
            }
            return branches;
        }
    }
}

/// Entanglement residual of qubit q against the rest: n0*n1 - |<row0|row1>|^2
/// for the two rows of the 2 x 2^(n-1) amplitude table. Zero iff the rows are
/// parallel, i.e. the qubit factors out.
inline double separability_residual(const StateVector& s, int q) {
    detail::check_qubit(s, q, "separability_residual");
    const std::uint64_t step = std::uint64_t(1) << q;
    double n0 = 0.0, n1 = 0.0;
    cpx c01(0.0, 0.0);
    for (std::uint64_t base = 0; base < s.dim(); base += 2 * step)
        for (std::uint64_t low = 0; low < step; ++low) {
            const cpx r0 = s.amps[base | low];
            const cpx r1 = s.amps[(base | low) | step];
            n0 += std::norm(r0);
            n1 += std::norm(r1);
            c01 += std::conj(r0) * r1;
        }
    return n0 * n1 - std::norm(c01);
}

/// Remove a qubit that is in a product state with the rest; qubit indices
/// above q shift down by one. The kept factor is the larger-norm row,
/// renormalized (fidelity-equivalent to either row).
inline StateVector discard_qubit(const StateVector& s, int q) {
    detail::check_qubit(s, q, "discard_qubit");
    if (s.n == 1)
        throw index_error("discard_qubit: cannot discard the last qubit");
    const double residual = separability_residual(s, q);
    if (residual > discard_residual_tol)
        throw discard_error("discard_qubit: qubit " + std::to_string(q) +
                                " is entangled (residual " + std::to_string(residual) + ")",
                            residual);
    const std::uint64_t step = std::uint64_t(1) << q;
    double n0 = 0.0, n1 = 0.0;
    for (std::uint64_t base = 0; base < s.dim(); base += 2 * step)
        for (std::uint64_t low = 0; low < step; ++low) {
            n0 += std::norm(s.amps[base | low]);
            n1 += std::norm(s.amps[(base | low) | step]);
        }
    const int row = n0 >= n1 ? 0 : 1;
    const double inv = 1.0 / std::sqrt(row ? n1 : n0);
    StateVector out;
    out.n = s.n - 1;
    out.amps.resize(s.dim() >> 1);
    std::uint64_t w = 0;
    for (std::uint64_t base = 0; base < s.dim(); base += 2 * step)
        for (std::uint64_t low = 0; low < step; ++low)
            out.amps[w++] = s.amps[(base | low) | (row ? step : 0)] * inv;
    return out;
}

/// Conjugated dot product <a|b>.
inline cpx inner_product(const StateVector& a, const StateVector& b) {
    if (a.n != b.n)
        throw dimension_error("inner_product: " + std::to_string(a.n) + " vs " +
                              std::to_string(b.n) + " qubits");
    cpx acc(0.0, 0.0);
    for (std::uint64_t i = 0; i < a.dim(); ++i)
        acc += std::conj(a.amps[i]) * b.amps[i];
    return acc;
}

/// |<a|b>|^2, clamped into [0, 1].
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

/// Tensor product; `a` keeps the low qubit indices, `b` is appended above.
inline StateVector tensor(const StateVector& a, const StateVector& b,
                          int max_qubits = default_max_qubits) {
    if (a.n + b.n > max_qubits)
        throw capacity_error("tensor: " + std::to_string(a.n + b.n) +
                             " qubits exceeds cap " + std::to_string(max_qubits));
    StateVector out;
    out.n = a.n + b.n;
    out.amps.resize(std::uint64_t(1) << out.n);
    for (std::uint64_t ib = 0; ib < b.dim(); ++ib) {
        const cpx bb = b.amps[ib];
        const std::uint64_t hi = ib << a.n;
        for (std::uint64_t ia = 0; ia < a.dim(); ++ia)
            out.amps[hi | ia] = a.amps[ia] * bb;
    }
    return out;
}

/// Haar-ish random test state: standard-normal complex amplitudes, normalized.
inline StateVector random_state(int n, SplitMix64& rng,
                                int max_qubits = default_max_qubits) {
    StateVector s = zero_state(n, max_qubits);
    for (cpx& a : s.amps) a = cpx(rng.next_gaussian(), rng.next_gaussian());
    return normalize(s);
}

}  // namespace cghz
