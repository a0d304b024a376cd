// Operational surface: run configurations, the six CLI commands, and
// machine-readable reporting. Every command returns a Report whose JSON
// payload is byte-identical across runs with the same configuration and seed
// (the wall-clock duration field is excluded from the payload).

#pragma once

#include <chrono>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cghz/analyzer.hpp"
#include "cghz/encodings.hpp"
#include "cghz/oracle.hpp"
#include "cghz/protocols.hpp"
#include "cghz/statevec.hpp"

namespace cghz::harness {

using nlohmann::json;

inline constexpr const char* version_string = "0.1.0";

struct RunConfig {
    // Global knobs.
    int max_qubits = default_max_qubits;
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    std::string format = "json";  // json | csv
    std::string out_path;         // report destination; empty = stdout

    // Command parameters.
    std::string state_label = "phi+";  // analyze
    int blocks = 2;                    // N
    int qubits_per_block = 2;          // m
    int k = 1;                         // noise-sweep label
    bool sign_minus = false;
    long trials = 100;
    cpx alpha{1.0, 0.0};  // teleport
    cpx beta{0.0, 0.0};
    bool all_branches = false;
    std::vector<double> p_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    std::string circuit_out;  // emit-circuit gate-list destination
};

struct Report {
    std::string command;
    json config;
    json results;
    double duration_ms = 0.0;

    /// Full report, duration included.
    json to_json() const {
        return json{{"command", command},
                    {"config", config},
                    {"results", results},
                    {"duration_ms", duration_ms},
                    {"version", version_string}};
    }

    /// Deterministic part: everything except the duration.
    json payload() const {
        return json{{"command", command},
                    {"config", config},
                    {"results", results},
                    {"version", version_string}};
    }
};

namespace detail {

inline void check_globals(const RunConfig& cfg) {
    if (cfg.tolerance <= 0.0)
        throw argument_error("tolerance must be positive, got " +
                             std::to_string(cfg.tolerance));
    if (cfg.format != "json" && cfg.format != "csv")
        throw argument_error("format must be json or csv, got '" + cfg.format + "'");
}

inline json config_base(const RunConfig& cfg) {
    return json{{"seed", cfg.seed},
                {"max_qubits", cfg.max_qubits},
                {"tolerance", cfg.tolerance},
                {"format", cfg.format}};
}

inline MeasurePolicy policy_of(const RunConfig& cfg) {
    return cfg.all_branches ? MeasurePolicy::branch_all() : MeasurePolicy::sample(cfg.seed);
}

inline json complex_json(const cpx& c) { return json::array({c.real(), c.imag()}); }

inline json flips_json(const FlipRecord& flips) {
    return json{{"outcomes", flips.outcomes},
                {"parity", flips.parity},
                {"corrected_qubits", flips.corrected_qubits}};
}

class Stopwatch {
  public:
    double elapsed_ms() const {
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(now - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// Build the labelled state and report its exact BranchAll outcome
/// distribution.
inline Report cmd_analyze(const RunConfig& cfg) {
    detail::Stopwatch watch;
    detail::check_globals(cfg);
    const CghzLabel label = parse_label(cfg.state_label, cfg.max_qubits);
    const StateVector state = make_cghz(label, cfg.max_qubits);

    const std::vector<AnalysisResult> results =
        analyze_cghz(state, label.layout, MeasurePolicy::branch_all());

    json outcomes = json::array();
    json reduction;
    for (const AnalysisResult& r : results) {
        json row{{"label", format_label(r.label)},
                 {"probability", r.probability},
                 {"sign_bit", r.sign_bit},
                 {"diff_bits", r.diff_bits}};
        if (r.label.layout.blocks == 2)
            row["bell"] = logic_bell_name(cghz_to_logic_bell(r.label));
        outcomes.push_back(std::move(row));
        reduction = detail::flips_json(r.flips);  // shared across outcomes
    }

    Report report;
    report.command = "analyze";
    report.config = detail::config_base(cfg);
    report.config["state"] = cfg.state_label;
    report.results = json{{"state", format_label(label)},
                          {"N", label.layout.blocks},
                          {"m", label.layout.qubits_per_block},
                          {"outcomes", outcomes},
                          {"reduction", reduction}};
    report.duration_ms = watch.elapsed_ms();
    return report;
}

/// Analyzer-vs-oracle distribution sweep over random in-span states.
inline Report cmd_verify(const RunConfig& cfg) {
    detail::Stopwatch watch;
    detail::check_globals(cfg);
    const BlockLayout layout(cfg.blocks, cfg.qubits_per_block, cfg.max_qubits);
    const EquivalenceReport eq = check_equivalence(layout, cfg.trials, cfg.seed, cfg.max_qubits);
    const bool pass = eq.max_deviation < cfg.tolerance;

    Report report;
    report.command = "verify";
    report.config = detail::config_base(cfg);
    report.config["N"] = cfg.blocks;
    report.config["m"] = cfg.qubits_per_block;
    report.config["trials"] = cfg.trials;
    report.results = json{{"N", eq.blocks},
                          {"m", eq.qubits_per_block},
                          {"trials", eq.trials},
                          {"seed", eq.seed},
                          {"max_deviation", eq.max_deviation},
                          {"pass", pass}};
    report.duration_ms = watch.elapsed_ms();
    return report;
}

/// Teleport an arbitrary logic qubit and report per-branch fidelities.
inline Report cmd_teleport(const RunConfig& cfg) {
    detail::Stopwatch watch;
    detail::check_globals(cfg);
    const int m = cfg.qubits_per_block;
    const LogicQubitCoeffs coeffs{cfg.alpha, cfg.beta};
    const std::vector<TeleportResult> results = teleport(coeffs, m, detail::policy_of(cfg),
                                                         cfg.max_qubits);

    json branches = json::array();
    for (const TeleportResult& r : results)
        branches.push_back(json{{"outcome", logic_bell_name(r.outcome)},
                                {"probability", r.probability},
                                {"fidelity", r.fidelity}});

    Report report;
    report.command = "teleport";
    report.config = detail::config_base(cfg);
    report.config["m"] = m;
    report.config["alpha"] = detail::complex_json(cfg.alpha);
    report.config["beta"] = detail::complex_json(cfg.beta);
    report.config["all_branches"] = cfg.all_branches;
    report.results = json{{"protocol", "teleport"},
                          {"m", m},
                          {"policy", cfg.all_branches ? "all-branches" : "sample"},
                          {"seed", cfg.seed},
                          {"branches", branches}};
    report.duration_ms = watch.elapsed_ms();
    return report;
}

/// Entanglement swapping between two logic Bell pairs.
inline Report cmd_swap(const RunConfig& cfg) {
    detail::Stopwatch watch;
    detail::check_globals(cfg);
    const int m = cfg.qubits_per_block;
    const std::vector<SwapResult> results =
        entanglement_swap(m, detail::policy_of(cfg), cfg.max_qubits);

    json branches = json::array();
    for (const SwapResult& r : results)
        branches.push_back(json{{"outcome", logic_bell_name(r.outcome)},
                                {"probability", r.probability},
                                {"fidelity", r.fidelity_after_correction}});

    Report report;
    report.command = "swap";
    report.config = detail::config_base(cfg);
    report.config["m"] = m;
    report.config["all_branches"] = cfg.all_branches;
    report.results = json{{"protocol", "swap"},
                          {"m", m},
                          {"policy", cfg.all_branches ? "all-branches" : "sample"},
                          {"seed", cfg.seed},
                          {"branches", branches}};
    report.duration_ms = watch.elapsed_ms();
    return report;
}

/// Monte Carlo dephasing sweep: prepare a labelled C-GHZ state, flip each
/// physical qubit's phase independently with probability p, and report how
/// often the oracle still ranks the prepared label first.
inline Report cmd_noise_sweep(const RunConfig& cfg) {
    detail::Stopwatch watch;
    detail::check_globals(cfg);
    if (cfg.trials < 1) throw argument_error("noise-sweep: trials must be >= 1");
    for (double p : cfg.p_grid)
        if (p < 0.0 || p > 1.0)
            throw argument_error("noise-sweep: probability " + std::to_string(p) +
                                 " outside [0, 1]");
    const BlockLayout layout(cfg.blocks, cfg.qubits_per_block, cfg.max_qubits);
    const CghzLabel label{layout, cfg.k, cfg.sign_minus ? GhzSign::Minus : GhzSign::Plus};
    const StateVector prepared = make_cghz(label, cfg.max_qubits);

    json grid = json::array();
    std::uint64_t trial_index = 0;
    for (double p : cfg.p_grid) {
        long retained = 0;
        for (long t = 0; t < cfg.trials; ++t, ++trial_index) {
            SplitMix64 rng(derive_seed(cfg.seed, trial_index));
            StateVector s = prepared;
            for (int q = 0; q < s.n; ++q)
                if (rng.next_double() < p) apply_1q(s, GateKind::Z, q);
            if (project_onto_basis(s, layout).dominant() == label) ++retained;
        }
        grid.push_back(json{{"p", p},
                            {"retention", static_cast<double>(retained) / cfg.trials}});
    }

    Report report;
    report.command = "noise-sweep";
    report.config = detail::config_base(cfg);
    report.config["N"] = cfg.blocks;
    report.config["m"] = cfg.qubits_per_block;
    report.config["k"] = cfg.k;
    report.config["sign"] = std::string(1, sign_char(label.sign));
    report.config["trials"] = cfg.trials;
    report.results = json{{"label", format_label(label)},
                          {"trials", cfg.trials},
                          {"seed", cfg.seed},
                          {"grid", grid}};
    report.duration_ms = watch.elapsed_ms();
    return report;
}

/// Export the analyzer's gate list for a layout; byte-stable per input.
inline Report cmd_emit_circuit(const RunConfig& cfg) {
    detail::Stopwatch watch;
    detail::check_globals(cfg);
    const BlockLayout layout(cfg.blocks, cfg.qubits_per_block, cfg.max_qubits);
    const std::vector<std::string> lines = analyzer_circuit(layout);

    if (!cfg.circuit_out.empty()) {
        std::ofstream out(cfg.circuit_out);
        if (!out) throw io_error("emit-circuit: cannot open '" + cfg.circuit_out + "'");
        for (const std::string& line : lines) out << line << '\n';
        if (!out) throw io_error("emit-circuit: write to '" + cfg.circuit_out + "' failed");
    }

    Report report;
    report.command = "emit-circuit";
    report.config = detail::config_base(cfg);
    report.config["N"] = cfg.blocks;
    report.config["m"] = cfg.qubits_per_block;
    report.results = json{{"N", cfg.blocks},
                          {"m", cfg.qubits_per_block},
                          {"line_count", lines.size()},
                          {"instructions", lines}};
    if (!cfg.circuit_out.empty()) report.results["circuit_path"] = cfg.circuit_out;
    report.duration_ms = watch.elapsed_ms();
    return report;
}

/// CSV rendering of a report's results (documented fixed columns; JSON is the
/// source of truth).
inline std::string to_csv(const Report& report) {
    std::string out;
    const json& r = report.results;
    const auto num = [](const json& v) {
        return v.is_number_integer() ? std::to_string(v.get<long long>())
                                     : json(v.get<double>()).dump();
    };
    if (report.command == "analyze") {
        out = "label,probability\n";
        for (const json& row : r.at("outcomes"))
            out += row.at("label").get<std::string>() + "," + num(row.at("probability")) + "\n";
    } else if (report.command == "verify") {
        out = "N,m,trials,seed,max_deviation,pass\n";
        out += num(r.at("N")) + "," + num(r.at("m")) + "," + num(r.at("trials")) + "," +
               num(r.at("seed")) + "," + num(r.at("max_deviation")) + "," +
               (r.at("pass").get<bool>() ? "true" : "false") + "\n";
    } else if (report.command == "teleport" || report.command == "swap") {
        out = "outcome,probability,fidelity\n";
        for (const json& row : r.at("branches"))
            out += row.at("outcome").get<std::string>() + "," + num(row.at("probability")) +
                   "," + num(row.at("fidelity")) + "\n";
    } else if (report.command == "noise-sweep") {
        out = "p,retention\n";
        for (const json& row : r.at("grid"))
            out += num(row.at("p")) + "," + num(row.at("retention")) + "\n";
    } else {  // emit-circuit: the instruction stream itself
        out = "instruction\n";
        for (const json& line : r.at("instructions"))
            out += line.get<std::string>() + "\n";
    }
    return out;
}

/// Serialize a report per the configured format.
inline std::string render(const Report& report, const RunConfig& cfg) {
    if (cfg.format == "csv") return to_csv(report);
    return report.to_json().dump(2) + "\n";
}

/// Parse "a", "bi", "a+bi" style complex literals (e.g. "0.6", "0.8i",
/// "-0.2-0.9i").
inline cpx parse_complex(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw argument_error("parse_complex: empty literal");

    const auto to_double = [&](const std::string& part, bool unit_ok) -> double {
        if (unit_ok && (part.empty() || part == "+" )) return 1.0;
        if (unit_ok && part == "-") return -1.0;
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(part, &used);
        } catch (const std::exception&) {
            throw argument_error("parse_complex: bad number in '" + text + "'");
        }
        if (used != part.size())
            throw argument_error("parse_complex: trailing junk in '" + text + "'");
        return value;
    };

    if (t.back() == 'i' || t.back() == 'I') {
        const std::string body = t.substr(0, t.size() - 1);
        // Split at the last top-level +/- (skipping a leading sign and
        // exponent signs) to separate the real part, if any.
        std::size_t split = std::string::npos;
        for (std::size_t i = 1; i < body.size(); ++i) {
            if ((body[i] == '+' || body[i] == '-') &&
                body[i - 1] != 'e' && body[i - 1] != 'E')
                split = i;
        }
        if (split == std::string::npos) return cpx(0.0, to_double(body, true));
        return cpx(to_double(body.substr(0, split), false),
                   to_double(body.substr(split), true));
    }
    return cpx(to_double(t, false), 0.0);
}

/// Exit code a command's report maps to (verification breach = 1).
inline int exit_code(const Report& report) {
    if (report.command == "verify" && !report.results.at("pass").get<bool>()) return 1;
    return 0;
}

}  // namespace cghz::harness
