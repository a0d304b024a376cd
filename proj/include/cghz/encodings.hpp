// Constructors and labels for the state families the analyzers act on:
// physical Bell pairs, GHZ_m blocks, logic Bell states, arbitrary logic
// qubits, and the 2^N concatenated-GHZ (C-GHZ) basis states.
//
// Register convention: block-major. Block i of a BlockLayout occupies the
// contiguous qubits [i*m, i*m + m); qubit i*m is the first-in-block (a1, b1,
// ...) and qubit i*m + 1 the second-in-block (a2, b2, ..., n2).

#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "cghz/statevec.hpp"

namespace cghz {

enum class GhzSign { Plus, Minus };

inline GhzSign opposite(GhzSign s) {
    return s == GhzSign::Plus ? GhzSign::Minus : GhzSign::Plus;
}

inline char sign_char(GhzSign s) { return s == GhzSign::Plus ? '+' : '-'; }

/// N blocks of m physical qubits each, flattened block-major.
struct BlockLayout {
    int blocks = 2;            // N
    int qubits_per_block = 2;  // m

    BlockLayout(int N, int m, int max_qubits = default_max_qubits)
        : blocks(N), qubits_per_block(m) {
        if (N < 2) throw layout_error("BlockLayout: need at least 2 blocks, got " + std::to_string(N));
        if (m < 2) throw layout_error("BlockLayout: need at least 2 qubits per block, got " + std::to_string(m));
        if (static_cast<long>(N) * m > max_qubits)
            throw capacity_error("BlockLayout: " + std::to_string(N) + "x" + std::to_string(m) +
                                 " = " + std::to_string(N * m) + " qubits exceeds cap " +
                                 std::to_string(max_qubits));
    }

    int n_qubits() const { return blocks * qubits_per_block; }
    int block_begin(int i) const { return i * qubits_per_block; }
    int block_first(int i) const { return block_begin(i); }
    int block_second(int i) const { return block_begin(i) + 1; }

    friend bool operator==(const BlockLayout& a, const BlockLayout& b) {
        return a.blocks == b.blocks && a.qubits_per_block == b.qubits_per_block;
    }
};

/// Names one of the 2^N C-GHZ basis states for a layout: pattern class
/// k in [1, 2^(N-1)] plus an overall sign.
struct CghzLabel {
    BlockLayout layout;
    int k = 1;
    GhzSign sign = GhzSign::Plus;

    friend bool operator==(const CghzLabel& a, const CghzLabel& b) {
        return a.layout == b.layout && a.k == b.k && a.sign == b.sign;
    }
};

enum class LogicBellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Per-block sign assignment modulo global complement. `signs` is the
/// canonical representative (first block Plus); `diff` the complement-
/// invariant vector d with d[i] = 1 iff signs i and i+1 differ.
struct BlockPattern {
    std::vector<GhzSign> signs;
    std::vector<int> diff;
};

/// Coefficients of an arbitrary logic qubit alpha*GHZ+ + beta*GHZ-.
struct LogicQubitCoeffs {
    cpx alpha{1.0, 0.0};
    cpx beta{0.0, 0.0};
};

/// Position of a label in the canonical basis order (k ascending, Plus before
/// Minus); inverse of the (k, sign) pair.
inline int basis_index(int k, GhzSign sign) {
    return 2 * (k - 1) + (sign == GhzSign::Minus ? 1 : 0);
}
inline int basis_index(const CghzLabel& label) { return basis_index(label.k, label.sign); }

// ---------------------------------------------------------------------------
// Pattern-class indexing.
//
// k - 1 is read as the little-endian integer of the difference vector
// (d[0] = blocks 0/1, least significant). This is exactly the bit pattern the
// analyzer's final N-1 measurements produce, so decoding is table-free.
// ---------------------------------------------------------------------------

inline int k_for_diff(const std::vector<int>& diff) {
    int k = 1;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        if (diff[i] != 0 && diff[i] != 1)
            throw label_error("k_for_diff: difference bits must be 0 or 1");
        k += diff[i] << i;
    }
    return k;
}

inline BlockPattern pattern_for_k(int k, int N) {
    if (N < 2) throw layout_error("pattern_for_k: need at least 2 blocks");
    if (k < 1 || k > (1 << (N - 1)))
        throw label_error("pattern_for_k: k = " + std::to_string(k) +
                          " outside [1, " + std::to_string(1 << (N - 1)) + "]");
    BlockPattern p;
    p.diff.resize(N - 1);
    for (int i = 0; i < N - 1; ++i) p.diff[i] = (k - 1) >> i & 1;
    p.signs.resize(N);
    p.signs[0] = GhzSign::Plus;
    for (int i = 1; i < N; ++i)
        p.signs[i] = p.diff[i - 1] ? opposite(p.signs[i - 1]) : p.signs[i - 1];
    return p;
}

// ---------------------------------------------------------------------------
// Constructors.
// ---------------------------------------------------------------------------

/// (|0...0> +/- |1...1>)/sqrt(2) on m qubits.
inline StateVector make_ghz(int m, GhzSign sign, int max_qubits = default_max_qubits) {
    StateVector s = zero_state(m, max_qubits);
    s.amps[0] = cpx(inv_sqrt2, 0.0);
    s.amps[s.dim() - 1] = cpx(sign == GhzSign::Plus ? inv_sqrt2 : -inv_sqrt2, 0.0);
    return s;
}

/// Physical Bell pairs; make_ghz(2, .) gives phi+/-, this adds psi+/-.
inline StateVector make_bell_phi(GhzSign sign) { return make_ghz(2, sign); }

inline StateVector make_bell_psi(GhzSign sign) {
    StateVector s = zero_state(2);
    s.amps[0] = cpx(0.0, 0.0);
    s.amps[2] = cpx(inv_sqrt2, 0.0);  // |01>: first qubit 0, second qubit 1
    s.amps[1] = cpx(sign == GhzSign::Plus ? inv_sqrt2 : -inv_sqrt2, 0.0);
    return s;
}

/// The four logic Bell states on qubits a1 a2 b1 b2, built from physical Bell
/// pairs: Phi+- = (phi+ phi+ +- phi- phi-)/sqrt(2),
/// Psi+- = (phi+ phi- +- phi- phi+)/sqrt(2).
inline StateVector make_logic_bell(LogicBellLabel label) {
    const StateVector pp = make_bell_phi(GhzSign::Plus);
    const StateVector pm = make_bell_phi(GhzSign::Minus);
    StateVector first, second;
    double rel = 1.0;
    switch (label) {
        case LogicBellLabel::PhiPlus:  first = tensor(pp, pp); second = tensor(pm, pm); break;
        case LogicBellLabel::PhiMinus: first = tensor(pp, pp); second = tensor(pm, pm); rel = -1.0; break;
        case LogicBellLabel::PsiPlus:  first = tensor(pp, pm); second = tensor(pm, pp); break;
        case LogicBellLabel::PsiMinus: first = tensor(pp, pm); second = tensor(pm, pp); rel = -1.0; break;
    }
    StateVector out;
    out.n = 4;
    out.amps.resize(16);
    for (std::uint64_t i = 0; i < 16; ++i)
        out.amps[i] = (first.amps[i] + rel * second.amps[i]) * inv_sqrt2;
    return out;
}

/// C-GHZ basis state for a label: (tensor_i GHZ^{p_i} +- tensor_i GHZ^{~p_i})
/// / sqrt(2) with p the canonical pattern for k.
inline StateVector make_cghz(const CghzLabel& label, int max_qubits = default_max_qubits) {
    const int N = label.layout.blocks;
    const int m = label.layout.qubits_per_block;
    const BlockPattern pattern = pattern_for_k(label.k, N);  // validates k
    StateVector s = zero_state(N * m, max_qubits);
    s.amps[0] = cpx(0.0, 0.0);

    // Both terms live on the 2^N indices where each block is all-0 or all-1.
    const std::uint64_t block_ones = (std::uint64_t(1) << m) - 1;
    const double coef = std::pow(2.0, -0.5 * (N + 1));
    const double rel = label.sign == GhzSign::Plus ? 1.0 : -1.0;
    for (std::uint64_t b = 0; b < (std::uint64_t(1) << N); ++b) {
        std::uint64_t idx = 0;
        double w_pat = 1.0;   // product of block signs under pattern p
        double w_comp = 1.0;  // ... under the complemented pattern
        for (int i = 0; i < N; ++i) {
            if (b >> i & 1) {
                idx |= block_ones << (i * m);
                if (pattern.signs[i] == GhzSign::Minus) w_pat = -w_pat;
                else w_comp = -w_comp;
            }
        }
        s.amps[idx] = cpx(coef * (w_pat + rel * w_comp), 0.0);
    }
    return s;
}

/// alpha*GHZ+_m + beta*GHZ-_m. Coefficients must be unit-norm.
inline StateVector make_logic_qubit(const LogicQubitCoeffs& c, int m,
                                    int max_qubits = default_max_qubits) {
    const double n2 = std::norm(c.alpha) + std::norm(c.beta);
    if (std::abs(n2 - 1.0) > 1e-12)
        throw normalization_error("make_logic_qubit: |alpha|^2 + |beta|^2 = " +
                                  std::to_string(n2) + ", expected 1");
    StateVector s = zero_state(m, max_qubits);
    s.amps[0] = (c.alpha + c.beta) * inv_sqrt2;
    s.amps[s.dim() - 1] = (c.alpha - c.beta) * inv_sqrt2;
    return s;
}

// ---------------------------------------------------------------------------
// Label text forms. Canonical: "N<N>m<m>k<k><+|->" (e.g. N3m2k1+). The four
// N=2, m=2 labels also answer to phi+ phi- psi+ psi-.
// ---------------------------------------------------------------------------

inline CghzLabel logic_bell_to_cghz(LogicBellLabel label, int m = 2) {
    const BlockLayout layout(2, m);
    switch (label) {
        case LogicBellLabel::PhiPlus:  return {layout, 1, GhzSign::Plus};
        case LogicBellLabel::PhiMinus: return {layout, 1, GhzSign::Minus};
        case LogicBellLabel::PsiPlus:  return {layout, 2, GhzSign::Plus};
        default:                       return {layout, 2, GhzSign::Minus};
    }
}

/// Inverse of logic_bell_to_cghz; requires a two-block label.
inline LogicBellLabel cghz_to_logic_bell(const CghzLabel& label) {
    if (label.layout.blocks != 2 || (label.k != 1 && label.k != 2))
        throw label_error("cghz_to_logic_bell: not a two-block label");
    if (label.k == 1)
        return label.sign == GhzSign::Plus ? LogicBellLabel::PhiPlus : LogicBellLabel::PhiMinus;
    return label.sign == GhzSign::Plus ? LogicBellLabel::PsiPlus : LogicBellLabel::PsiMinus;
}

inline std::string logic_bell_name(LogicBellLabel label) {
    switch (label) {
        case LogicBellLabel::PhiPlus:  return "phi+";
        case LogicBellLabel::PhiMinus: return "phi-";
        case LogicBellLabel::PsiPlus:  return "psi+";
        default:                       return "psi-";
    }
}

inline std::string format_label(const CghzLabel& label) {
    return "N" + std::to_string(label.layout.blocks) + "m" +
           std::to_string(label.layout.qubits_per_block) + "k" +
           std::to_string(label.k) + sign_char(label.sign);
}

/// Parse either a canonical label or a logic Bell name.
inline CghzLabel parse_label(const std::string& text, int max_qubits = default_max_qubits) {
    if (text == "phi+") return logic_bell_to_cghz(LogicBellLabel::PhiPlus);
    if (text == "phi-") return logic_bell_to_cghz(LogicBellLabel::PhiMinus);
    if (text == "psi+") return logic_bell_to_cghz(LogicBellLabel::PsiPlus);
    if (text == "psi-") return logic_bell_to_cghz(LogicBellLabel::PsiMinus);

    const auto fail = [&]() -> label_error {
        return label_error("parse_label: expected N<N>m<m>k<k><+|-> or a Bell name, got '" +
                           text + "'");
    };
    std::size_t pos = 0;
    const auto read_int = [&](char prefix) {
        if (pos >= text.size() || text[pos] != prefix) throw fail();
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw fail();
        try {
            return std::stoi(text.substr(start, pos - start));
        } catch (const std::out_of_range&) {
            throw fail();
        }
    };
    const int N = read_int('N');
    const int m = read_int('m');
    const int k = read_int('k');
    if (pos + 1 != text.size() || (text[pos] != '+' && text[pos] != '-')) throw fail();
    const GhzSign sign = text[pos] == '+' ? GhzSign::Plus : GhzSign::Minus;
    const BlockLayout layout(N, m, max_qubits);
    if (k < 1 || k > (1 << (N - 1)))
        throw label_error("parse_label: k = " + std::to_string(k) + " outside [1, " +
                          std::to_string(1 << (N - 1)) + "] for N = " + std::to_string(N));
    return {layout, k, sign};
}

}  // namespace cghz
