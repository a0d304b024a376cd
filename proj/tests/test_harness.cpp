#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "cghz/harness.hpp"

using namespace cghz;
using namespace cghz::harness;

namespace {
constexpr double kTol = 1e-12;
}

TEST_CASE("parse_complex accepts the documented literal forms") {
    REQUIRE(parse_complex("0.6") == cpx(0.6, 0.0));
    REQUIRE(parse_complex("0.8i") == cpx(0.0, 0.8));
    REQUIRE(parse_complex("-0.2-0.9i") == cpx(-0.2, -0.9));
    REQUIRE(parse_complex("0.3+0.4i") == cpx(0.3, 0.4));
    REQUIRE(parse_complex("i") == cpx(0.0, 1.0));
    REQUIRE(parse_complex("-i") == cpx(0.0, -1.0));
    REQUIRE(parse_complex("1e-1i") == cpx(0.0, 0.1));
    REQUIRE(parse_complex(" 0.5 + 0.5i ") == cpx(0.5, 0.5));

    for (const char* bad : {"", "abc", "1+2", "1i2", "0.6+0.8j"})
        REQUIRE_THROWS_AS(parse_complex(bad), argument_error);
}

TEST_CASE("cmd_analyze reports the exact outcome for basis labels") {
    RunConfig cfg;
    cfg.state_label = "N3m2k1+";
    const Report report = cmd_analyze(cfg);
    REQUIRE(report.command == "analyze");
    const json& outcomes = report.results.at("outcomes");
    REQUIRE(outcomes.size() == 1);
    REQUIRE(outcomes[0].at("label") == "N3m2k1+");
    REQUIRE(outcomes[0].at("probability").get<double>() == Catch::Approx(1.0).margin(kTol));

    SECTION("logic Bell names decode with the documented bit mapping") {
        cfg.state_label = "phi-";
        const Report bell = cmd_analyze(cfg);
        const json& row = bell.results.at("outcomes").at(0);
        REQUIRE(row.at("bell") == "phi-");
        REQUIRE(row.at("sign_bit") == 1);
        REQUIRE(row.at("diff_bits") == json::array({0}));
    }

    SECTION("invalid labels are domain errors") {
        cfg.state_label = "N2m2k9+";
        REQUIRE_THROWS_AS(cmd_analyze(cfg), label_error);
    }
}

TEST_CASE("cmd_verify passes within tolerance and flags breaches") {
    RunConfig cfg;
    cfg.blocks = 2;
    cfg.qubits_per_block = 2;
    cfg.trials = 50;
    cfg.seed = 7;
    const Report report = cmd_verify(cfg);
    REQUIRE(report.results.at("pass").get<bool>());
    REQUIRE(report.results.at("max_deviation").get<double>() < 1e-9);
    REQUIRE(exit_code(report) == 0);

    SECTION("an unreachable tolerance turns into exit code 1") {
        cfg.tolerance = 1e-300;
        const Report strict = cmd_verify(cfg);
        REQUIRE_FALSE(strict.results.at("pass").get<bool>());
        REQUIRE(exit_code(strict) == 1);
    }

    SECTION("zero trials rejected") {
        cfg.trials = 0;
        REQUIRE_THROWS_AS(cmd_verify(cfg), argument_error);
    }

    SECTION("non-positive tolerance is a usage error") {
        cfg.tolerance = 0.0;
        REQUIRE_THROWS_AS(cmd_verify(cfg), argument_error);
        cfg.tolerance = -1.0;
        REQUIRE_THROWS_AS(cmd_analyze(cfg), argument_error);
    }
}

TEST_CASE("cmd_teleport and cmd_swap expose the branch tables") {
    RunConfig cfg;
    cfg.qubits_per_block = 2;
    cfg.alpha = cpx(0.6, 0.0);
    cfg.beta = cpx(0.0, 0.8);
    cfg.all_branches = true;

    const Report tele = cmd_teleport(cfg);
    REQUIRE(tele.results.at("branches").size() == 4);
    for (const json& row : tele.results.at("branches")) {
        REQUIRE(row.at("probability").get<double>() == Catch::Approx(0.25).margin(kTol));
        REQUIRE(row.at("fidelity").get<double>() == Catch::Approx(1.0).margin(1e-9));
    }

    const Report swapped = cmd_swap(cfg);
    REQUIRE(swapped.results.at("branches").size() == 4);
    for (const json& row : swapped.results.at("branches"))
        REQUIRE(row.at("fidelity").get<double>() == Catch::Approx(1.0).margin(1e-9));

    SECTION("unnormalized coefficients are rejected") {
        cfg.alpha = cpx(1.0, 0.0);
        cfg.beta = cpx(1.0, 0.0);
        REQUIRE_THROWS_AS(cmd_teleport(cfg), normalization_error);
    }
}

TEST_CASE("cmd_noise_sweep retention endpoints") {
    RunConfig cfg;
    cfg.blocks = 2;
    cfg.qubits_per_block = 2;
    cfg.trials = 2000;
    cfg.seed = 13;
    cfg.p_grid = {0.0, 0.5};
    const Report report = cmd_noise_sweep(cfg);
    const json& grid = report.results.at("grid");
    REQUIRE(grid.size() == 2);
    REQUIRE(grid[0].at("p").get<double>() == 0.0);
    REQUIRE(grid[0].at("retention").get<double>() == 1.0);  // no noise, exact
    // p = 0.5 fully randomizes the parity that separates the two classes;
    // asymptotic retention is 0.5.
    REQUIRE(grid[1].at("retention").get<double>() == Catch::Approx(0.5).margin(0.05));

    SECTION("p = 1 flips every block, which is the complement pattern: exact retention") {
        cfg.trials = 200;
        cfg.p_grid = {1.0};
        for (int m : {2, 3}) {
            cfg.qubits_per_block = m;
            const Report full = cmd_noise_sweep(cfg);
            REQUIRE(full.results.at("grid").at(0).at("retention").get<double>() == 1.0);
        }
    }

    SECTION("probabilities outside [0, 1] are usage errors") {
        cfg.p_grid = {0.2, 1.5};
        REQUIRE_THROWS_AS(cmd_noise_sweep(cfg), argument_error);
    }
}

TEST_CASE("cmd_emit_circuit writes a byte-stable gate list") {
    RunConfig cfg;
    cfg.blocks = 3;
    cfg.qubits_per_block = 3;
    const std::string path = "emit_circuit_test.txt";
    cfg.circuit_out = path;

    const Report first = cmd_emit_circuit(cfg);
    std::ifstream in1(path);
    const std::string bytes1((std::istreambuf_iterator<char>(in1)),
                             std::istreambuf_iterator<char>());
    const Report second = cmd_emit_circuit(cfg);
    std::ifstream in2(path);
    const std::string bytes2((std::istreambuf_iterator<char>(in2)),
                             std::istreambuf_iterator<char>());
    REQUIRE(bytes1 == bytes2);
    REQUIRE_FALSE(bytes1.empty());
    REQUIRE(first.results.at("line_count") == second.results.at("line_count"));
    std::remove(path.c_str());

    SECTION("unwritable destinations raise io_error") {
        cfg.circuit_out = "no_such_dir/emit.txt";
        REQUIRE_THROWS_AS(cmd_emit_circuit(cfg), io_error);
    }
}

TEST_CASE("payloads are byte-identical across equal-seed runs") {
    RunConfig cfg;
    cfg.seed = 42;

    SECTION("analyze") {
        cfg.state_label = "N3m3k2-";
        REQUIRE(cmd_analyze(cfg).payload().dump() == cmd_analyze(cfg).payload().dump());
    }
    SECTION("verify") {
        cfg.trials = 20;
        REQUIRE(cmd_verify(cfg).payload().dump() == cmd_verify(cfg).payload().dump());
    }
    SECTION("teleport sampling") {
        cfg.alpha = cpx(0.8, 0.0);
        cfg.beta = cpx(0.0, -0.6);
        cfg.all_branches = false;
        REQUIRE(cmd_teleport(cfg).payload().dump() == cmd_teleport(cfg).payload().dump());
    }
    SECTION("noise sweep") {
        cfg.trials = 50;
        REQUIRE(cmd_noise_sweep(cfg).payload().dump() == cmd_noise_sweep(cfg).payload().dump());
    }
}

TEST_CASE("csv rendering uses the documented columns") {
    RunConfig cfg;
    cfg.format = "csv";
    cfg.state_label = "psi+";
    const std::string csv = render(cmd_analyze(cfg), cfg);
    REQUIRE(csv.rfind("label,probability\n", 0) == 0);
    REQUIRE(csv.find("N2m2k2+,1.0") != std::string::npos);

    cfg.trials = 10;
    const std::string verify_csv = render(cmd_verify(cfg), cfg);
    REQUIRE(verify_csv.rfind("N,m,trials,seed,max_deviation,pass\n", 0) == 0);
}
