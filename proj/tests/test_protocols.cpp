#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <vector>

#include "cghz/protocols.hpp"

using namespace cghz;

namespace {

constexpr double kTol = 1e-12;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// c1 * a + c2 * b for orthonormal a, b with |c1|^2 + |c2|^2 = 1.
StateVector combine(cpx c1, const StateVector& a, cpx c2, const StateVector& b) {
    StateVector out = a;
    for (std::uint64_t i = 0; i < out.dim(); ++i)
        out.amps[i] = c1 * a.amps[i] + c2 * b.amps[i];
    return out;
}

// The expected pre-correction block content for each analyzer outcome, given
// the teleported coefficients.
StateVector expected_bob_state(LogicBellLabel outcome, const LogicQubitCoeffs& c, int m) {
    const StateVector plus = make_ghz(m, GhzSign::Plus);
    const StateVector minus = make_ghz(m, GhzSign::Minus);
    switch (outcome) {
        case LogicBellLabel::PhiPlus:  return combine(c.alpha, plus, c.beta, minus);
        case LogicBellLabel::PhiMinus: return combine(c.alpha, plus, -c.beta, minus);
        case LogicBellLabel::PsiPlus:  return combine(c.alpha, minus, c.beta, plus);
        default:                       return combine(c.alpha, minus, -c.beta, plus);
    }
}

// Joint A,D forms before correction in entanglement swapping.
StateVector expected_ad_state(LogicBellLabel outcome, int m) {
    const StateVector pp = tensor(make_ghz(m, GhzSign::Plus), make_ghz(m, GhzSign::Plus));
    const StateVector mm = tensor(make_ghz(m, GhzSign::Minus), make_ghz(m, GhzSign::Minus));
    const StateVector pm = tensor(make_ghz(m, GhzSign::Plus), make_ghz(m, GhzSign::Minus));
    const StateVector mp = tensor(make_ghz(m, GhzSign::Minus), make_ghz(m, GhzSign::Plus));
    const cpx h(kInvSqrt2, 0);
    switch (outcome) {
        case LogicBellLabel::PhiPlus:  return combine(h, pp, h, mm);
        case LogicBellLabel::PhiMinus: return combine(h, pp, -h, mm);
        case LogicBellLabel::PsiPlus:  return combine(h, pm, h, mp);
        default:                       return combine(h, pm, -h, mp);
    }
}

}  // namespace

TEST_CASE("correction table fixes each analyzer outcome") {
    REQUIRE(correction_for(LogicBellLabel::PhiPlus, 3).ops.empty());

    SECTION("logical Z (X on all qubits) flips the relative sign") {
        const LogicQubitCoeffs c{cpx(0.6, 0), cpx(0, 0.8)};
        StateVector s = combine(c.alpha, make_ghz(3, GhzSign::Plus), -c.beta,
                                make_ghz(3, GhzSign::Minus));
        const Correction corr = correction_for(LogicBellLabel::PhiMinus, 3);
        REQUIRE(corr.ops.size() == 3);
        for (const auto& [g, q] : corr.ops) REQUIRE(g == GateKind::X);
        apply_correction(s, corr, 0);
        REQUIRE(fidelity(s, make_logic_qubit(c, 3)) == Catch::Approx(1.0).margin(kTol));
    }

    SECTION("logical X (Z on one qubit) exchanges the GHZ signs") {
        const LogicQubitCoeffs c{cpx(0.6, 0), cpx(0.8, 0)};
        StateVector s = combine(c.alpha, make_ghz(2, GhzSign::Minus), c.beta,
                                make_ghz(2, GhzSign::Plus));
        const Correction corr = correction_for(LogicBellLabel::PsiPlus, 2);
        REQUIRE(corr.ops.size() == 1);
        REQUIRE(corr.ops[0].first == GateKind::Z);
        apply_correction(s, corr, 0);
        REQUIRE(fidelity(s, make_logic_qubit(c, 2)) == Catch::Approx(1.0).margin(kTol));
    }

    SECTION("Psi- needs logical X then logical Z") {
        const Correction corr = correction_for(LogicBellLabel::PsiMinus, 2);
        REQUIRE(corr.ops.size() == 3);
        REQUIRE(corr.ops[0].first == GateKind::Z);
        REQUIRE(corr.ops[1].first == GateKind::X);
    }
}

TEST_CASE("teleporting a basis logic qubit leaves Bob with GHZ+") {
    const LogicQubitCoeffs c{cpx(1, 0), cpx(0, 0)};
    for (const TeleportResult& r : teleport(c, 2, MeasurePolicy::branch_all())) {
        REQUIRE(r.fidelity == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(fidelity(r.post_state, make_ghz(2, GhzSign::Plus)) ==
                Catch::Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("teleportation produces four quarter-probability branches") {
    const LogicQubitCoeffs c{cpx(0.6, 0), cpx(0, 0.8)};
    const auto results = teleport(c, 3, MeasurePolicy::branch_all());
    REQUIRE(results.size() == 4);
    std::map<LogicBellLabel, const TeleportResult*> by_outcome;
    for (const TeleportResult& r : results) {
        REQUIRE(r.probability == Catch::Approx(0.25).margin(kTol));
        REQUIRE(r.fidelity == Catch::Approx(1.0).margin(1e-9));
        by_outcome[r.outcome] = &r;
    }
    REQUIRE(by_outcome.size() == 4);

    SECTION("pre-correction branch states match the four expected forms") {
        for (const auto& [outcome, r] : by_outcome) {
            CAPTURE(logic_bell_name(outcome));
            REQUIRE(fidelity(r->pre_state, expected_bob_state(outcome, c, 3)) ==
                    Catch::Approx(1.0).margin(1e-9));
        }
    }
}

TEST_CASE("teleportation fidelity holds for random coefficients") {
    SplitMix64 rng(2718);
    for (int m : {2, 3, 4}) {
        for (int trial = 0; trial < 50; ++trial) {
            cpx alpha(rng.next_gaussian(), rng.next_gaussian());
            cpx beta(rng.next_gaussian(), rng.next_gaussian());
            const double norm = std::sqrt(std::norm(alpha) + std::norm(beta));
            alpha /= norm;
            beta /= norm;
            const LogicQubitCoeffs c{alpha, beta};
            for (const TeleportResult& r : teleport(c, m, MeasurePolicy::branch_all())) {
                REQUIRE(r.probability == Catch::Approx(0.25).margin(kTol));
                REQUIRE(r.fidelity == Catch::Approx(1.0).margin(1e-9));
            }
        }
    }
}

TEST_CASE("teleport validates its inputs") {
    REQUIRE_THROWS_AS(teleport({cpx(1, 0), cpx(1, 0)}, 2, MeasurePolicy::branch_all()),
                      normalization_error);
    REQUIRE_THROWS_AS(teleport({cpx(1, 0), cpx(0, 0)}, 9, MeasurePolicy::branch_all()),
                      capacity_error);
}

TEST_CASE("teleport under Sample returns one reproducible branch") {
    const LogicQubitCoeffs c{cpx(0.8, 0), cpx(0, -0.6)};
    const auto a = teleport(c, 2, MeasurePolicy::sample(99));
    const auto b = teleport(c, 2, MeasurePolicy::sample(99));
    REQUIRE(a.size() == 1);
    REQUIRE(a[0].outcome == b[0].outcome);
    REQUIRE(a[0].probability == Catch::Approx(0.25).margin(kTol));
    REQUIRE(a[0].fidelity == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("entanglement swapping yields four branches that correct to Phi+") {
    for (int m : {2, 3}) {
        CAPTURE(m);
        const auto results = entanglement_swap(m, MeasurePolicy::branch_all());
        REQUIRE(results.size() == 4);
        std::map<LogicBellLabel, const SwapResult*> by_outcome;
        for (const SwapResult& r : results) {
            REQUIRE(r.probability == Catch::Approx(0.25).margin(kTol));
            REQUIRE(r.fidelity_after_correction == Catch::Approx(1.0).margin(1e-9));
            by_outcome[r.outcome] = &r;
        }
        REQUIRE(by_outcome.size() == 4);

        // Pre-correction A,D content follows the measured outcome.
        for (const auto& [outcome, r] : by_outcome) {
            CAPTURE(logic_bell_name(outcome));
            REQUIRE(fidelity(r->ad_state, expected_ad_state(outcome, m)) ==
                    Catch::Approx(1.0).margin(1e-9));
        }
    }
}

TEST_CASE("swap capacity bound") {
    REQUIRE_THROWS_AS(entanglement_swap(7, MeasurePolicy::branch_all()), capacity_error);
}
