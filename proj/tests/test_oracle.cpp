#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cghz/oracle.hpp"

using namespace cghz;

namespace {
constexpr double kTol = 1e-12;
}

TEST_CASE("cghz_basis enumerates orthonormal states in label order") {
    const BlockLayout small(2, 2);
    const std::vector<StateVector> basis = cghz_basis(small);
    REQUIRE(basis.size() == 4);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            REQUIRE(std::abs(inner_product(basis[i], basis[j]) - cpx(i == j ? 1.0 : 0.0, 0)) <
                    kTol);

    REQUIRE(cghz_basis(BlockLayout(3, 2)).size() == 8);

    for (const StateVector& s : cghz_basis(BlockLayout(2, 4)))
        REQUIRE(s.norm2() == Catch::Approx(1.0).margin(kTol));

    SECTION("order is k ascending, Plus before Minus") {
        REQUIRE(fidelity(basis[0], make_cghz({small, 1, GhzSign::Plus})) ==
                Catch::Approx(1.0).margin(kTol));
        REQUIRE(fidelity(basis[1], make_cghz({small, 1, GhzSign::Minus})) ==
                Catch::Approx(1.0).margin(kTol));
        REQUIRE(fidelity(basis[2], make_cghz({small, 2, GhzSign::Plus})) ==
                Catch::Approx(1.0).margin(kTol));
        REQUIRE(fidelity(basis[3], make_cghz({small, 2, GhzSign::Minus})) ==
                Catch::Approx(1.0).margin(kTol));
    }
}

TEST_CASE("project_onto_basis decomposes by inner products") {
    const BlockLayout layout(2, 2);

    SECTION("basis states give indicator weights") {
        for (int k : {1, 2})
            for (GhzSign sign : {GhzSign::Plus, GhzSign::Minus}) {
                const CghzLabel label{layout, k, sign};
                const BasisDecomposition d = project_onto_basis(make_cghz(label), layout);
                REQUIRE(d.weight(label) == Catch::Approx(1.0).margin(kTol));
                REQUIRE(d.residual == Catch::Approx(0.0).margin(kTol));
                REQUIRE(d.dominant() == label);
            }
    }

    SECTION("|0000> splits between the two Plus labels") {
        const BasisDecomposition d = project_onto_basis(zero_state(4), layout);
        REQUIRE(d.weight(1, GhzSign::Plus) == Catch::Approx(0.5).margin(kTol));
        REQUIRE(d.weight(2, GhzSign::Plus) == Catch::Approx(0.5).margin(kTol));
        REQUIRE(d.weight(1, GhzSign::Minus) == Catch::Approx(0.0).margin(kTol));
        REQUIRE(d.residual == Catch::Approx(0.0).margin(kTol));
    }

    SECTION("|0100> lies fully outside the span") {
        const BasisDecomposition d = project_onto_basis(basis_state(4, 2), layout);
        for (double w : d.weights) REQUIRE(w == Catch::Approx(0.0).margin(kTol));
        REQUIRE(d.residual == Catch::Approx(1.0).margin(kTol));
    }

    SECTION("dimension mismatch is rejected") {
        REQUIRE_THROWS_AS(project_onto_basis(zero_state(5), layout), dimension_error);
    }
}

TEST_CASE("self-consistency over larger layouts") {
    for (auto [N, m] : std::vector<std::pair<int, int>>{{3, 3}, {4, 2}, {2, 4}}) {
        const BlockLayout layout(N, m);
        for (int k = 1; k <= (1 << (N - 1)); ++k)
            for (GhzSign sign : {GhzSign::Plus, GhzSign::Minus}) {
                const CghzLabel label{layout, k, sign};
                const BasisDecomposition d = project_onto_basis(make_cghz(label), layout);
                REQUIRE(d.weight(label) == Catch::Approx(1.0).margin(kTol));
                REQUIRE(d.residual < kTol);
            }
    }
}

TEST_CASE("random in-span states are unit-norm and span-confined") {
    const BlockLayout layout(3, 2);
    SplitMix64 rng(17);
    for (int t = 0; t < 10; ++t) {
        const StateVector s = random_in_span(layout, rng);
        REQUIRE(s.norm2() == Catch::Approx(1.0).margin(kTol));
        REQUIRE(project_onto_basis(s, layout).residual < kTol);
    }
}

TEST_CASE("analyzer and oracle distributions agree") {
    REQUIRE(check_equivalence(BlockLayout(2, 2), 100, 7).max_deviation < 1e-9);
    REQUIRE(check_equivalence(BlockLayout(3, 3), 50, 7).max_deviation < 1e-9);

    SECTION("full small-layout sweep") {
        for (auto [N, m] : std::vector<std::pair<int, int>>{
                 {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {3, 4}, {4, 2}, {4, 3}, {4, 4}}) {
            CAPTURE(N, m);
            const EquivalenceReport r = check_equivalence(BlockLayout(N, m), 50, 11);
            REQUIRE(r.max_deviation < 1e-9);
            REQUIRE(r.trials == 50);
        }
    }

    SECTION("argument validation") {
        REQUIRE_THROWS_AS(check_equivalence(BlockLayout(2, 2), 0, 1), argument_error);
    }
}
