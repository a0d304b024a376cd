// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or domain error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cghz/harness.hpp"

namespace {

using cghz::harness::Report;
using cghz::harness::RunConfig;

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty()) throw cghz::argument_error("noise-sweep: empty entry in --p-grid");
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            throw cghz::argument_error("noise-sweep: bad probability '" + item + "'");
        }
        if (used != item.size())
            throw cghz::argument_error("noise-sweep: bad probability '" + item + "'");
        grid.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return grid;
}

int emit(const Report& report, const RunConfig& cfg) {
    const std::string text = cghz::harness::render(report, cfg);
    if (cfg.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out_path);
        if (!out) throw cghz::io_error("cannot open '" + cfg.out_path + "'");
        out << text;
        out.flush();
        if (!out) throw cghz::io_error("write to '" + cfg.out_path + "' failed");
    }
    return cghz::harness::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and analyzer toolkit for concatenated-GHZ logic-qubit circuits"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string alpha_text = "1";
    std::string beta_text = "0";
    std::string sign_text = "+";
    std::string grid_text;

    app.add_option("--seed", cfg.seed, "Seed for every sampled draw")->capture_default_str();
    app.add_option("--max-qubits", cfg.max_qubits, "Register width cap")
        ->envname("CGHZ_MAX_QUBITS")
        ->capture_default_str();
    app.add_option("--tolerance", cfg.tolerance, "Verification tolerance")
        ->capture_default_str();
    app.add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out_path, "Write the report here instead of stdout");

    CLI::App* analyze = app.add_subcommand("analyze", "Discriminate a labelled C-GHZ state");
    analyze->add_option("--state", cfg.state_label,
                        "State label: N<N>m<m>k<k><+|-> or phi+/phi-/psi+/psi-")
        ->required();

    CLI::App* verify =
        app.add_subcommand("verify", "Analyzer-vs-oracle check over random in-span states");
    verify->add_option("--N", cfg.blocks, "Block count")->capture_default_str();
    verify->add_option("--m", cfg.qubits_per_block, "Qubits per block")->capture_default_str();
    verify->add_option("--trials", cfg.trials, "Random states to draw")->capture_default_str();

    CLI::App* teleport = app.add_subcommand("teleport", "Teleport an arbitrary logic qubit");
    teleport->add_option("--alpha", alpha_text, "GHZ+ coefficient (complex, e.g. 0.6 or 0.8i)")
        ->capture_default_str();
    teleport->add_option("--beta", beta_text, "GHZ- coefficient")->capture_default_str();
    teleport->add_option("--m", cfg.qubits_per_block, "Qubits per logic block")
        ->capture_default_str();
    teleport->add_flag("--all-branches", cfg.all_branches,
                       "Enumerate all four outcomes instead of sampling one");

    CLI::App* swap_cmd =
        app.add_subcommand("swap", "Entanglement swapping between two logic Bell pairs");
    swap_cmd->add_option("--m", cfg.qubits_per_block, "Qubits per logic block")
        ->capture_default_str();
    swap_cmd->add_flag("--all-branches", cfg.all_branches,
                       "Enumerate all four outcomes instead of sampling one");

    CLI::App* sweep = app.add_subcommand("noise-sweep",
                                         "Label retention under independent dephasing");
    sweep->add_option("--N", cfg.blocks, "Block count")->capture_default_str();
    sweep->add_option("--m", cfg.qubits_per_block, "Qubits per block")->capture_default_str();
    sweep->add_option("--k", cfg.k, "Pattern class of the prepared label")->capture_default_str();
    sweep->add_option("--sign", sign_text, "Sign of the prepared label")
        ->check(CLI::IsMember({"+", "-"}))
        ->capture_default_str();
    sweep->add_option("--p-grid", grid_text, "Comma-separated phase-flip probabilities");
    sweep->add_option("--trials", cfg.trials, "Trajectories per grid point")
        ->capture_default_str();

    CLI::App* emit_circuit =
        app.add_subcommand("emit-circuit", "Write the analyzer gate list for a layout");
    emit_circuit->add_option("--N", cfg.blocks, "Block count")->capture_default_str();
    emit_circuit->add_option("--m", cfg.qubits_per_block, "Qubits per block")
        ->capture_default_str();
    emit_circuit->add_option("--circuit-out", cfg.circuit_out,
                             "Gate-list file (instructions also land in the report)");

    for (CLI::App* sub : {analyze, verify, teleport, swap_cmd, sweep, emit_circuit})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.alpha = cghz::harness::parse_complex(alpha_text);
        cfg.beta = cghz::harness::parse_complex(beta_text);
        cfg.sign_minus = sign_text == "-";
        if (!grid_text.empty()) cfg.p_grid = parse_grid(grid_text);

        if (analyze->parsed()) return emit(cghz::harness::cmd_analyze(cfg), cfg);
        if (verify->parsed()) return emit(cghz::harness::cmd_verify(cfg), cfg);
        if (teleport->parsed()) return emit(cghz::harness::cmd_teleport(cfg), cfg);
        if (swap_cmd->parsed()) return emit(cghz::harness::cmd_swap(cfg), cfg);
        if (sweep->parsed()) return emit(cghz::harness::cmd_noise_sweep(cfg), cfg);
        if (emit_circuit->parsed()) return emit(cghz::harness::cmd_emit_circuit(cfg), cfg);
    } catch (const cghz::io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const cghz::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
