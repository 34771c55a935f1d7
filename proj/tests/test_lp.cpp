#include <catch2/catch_amalgamated.hpp>

#include <string>

#include <hardyamp/box.hpp>
#include <hardyamp/lp.hpp>
#include <hardyamp/rng.hpp>

using namespace hardyamp;
using Catch::Matchers::WithinAbs;

TEST_CASE("two-variable maximum with box constraints") {
    LPProblem p;
    p.nVars = 2;
    p.objective = {1.0, 1.0};
    p.maximize = true;
    p.rows = {LPRow{{1.0, 0.0}, '<', 1.0}, LPRow{{0.0, 1.0}, '<', 2.0}};
    const LPSolution s = solve(p);
    REQUIRE(s.status == LPStatus::Optimal);
    REQUIRE_THAT(s.value, WithinAbs(3.0, 1e-9));
    REQUIRE_THAT(s.x[0], WithinAbs(1.0, 1e-9));
    REQUIRE_THAT(s.x[1], WithinAbs(2.0, 1e-9));
}

TEST_CASE("minimization with equality and lower-bound rows") {
    // min x + 2y subject to x + y = 1, y >= 0.25
    LPProblem p;
    p.nVars = 2;
    p.objective = {1.0, 2.0};
    p.maximize = false;
    p.rows = {LPRow{{1.0, 1.0}, '=', 1.0}, LPRow{{0.0, 1.0}, '>', 0.25}};
    const LPSolution s = solve(p);
    REQUIRE(s.status == LPStatus::Optimal);
    REQUIRE_THAT(s.value, WithinAbs(1.25, 1e-9));
    REQUIRE_THAT(s.x[1], WithinAbs(0.25, 1e-9));
}

TEST_CASE("contradictory rows are reported infeasible") {
    LPProblem p;
    p.nVars = 1;
    p.objective = {1.0};
    p.rows = {LPRow{{1.0}, '>', 2.0}, LPRow{{1.0}, '<', 1.0}};
    REQUIRE(solve(p).status == LPStatus::Infeasible);
}

TEST_CASE("an uncapped objective is reported unbounded") {
    LPProblem p;
    p.nVars = 2;
    p.objective = {1.0, 0.0};
    p.maximize = true;
    p.rows = {LPRow{{0.0, 1.0}, '<', 1.0}};
    REQUIRE(solve(p).status == LPStatus::Unbounded);
}

TEST_CASE("problem validation rejects malformed rows") {
    LPProblem p;
    p.nVars = 2;
    p.objective = {1.0};
    REQUIRE_THROWS_AS(p.require(), StructuralError);
    p.objective = {1.0, 0.0};
    p.rows = {LPRow{{1.0}, '<', 1.0}};
    REQUIRE_THROWS_AS(p.require(), StructuralError);
    p.rows = {LPRow{{1.0, 0.0}, '?', 1.0}};
    REQUIRE_THROWS_AS(p.require(), StructuralError);
}

TEST_CASE("status names are stable") {
    REQUIRE(std::string(to_string(LPStatus::Optimal)) == "optimal");
    REQUIRE(std::string(to_string(LPStatus::Infeasible)) == "infeasible");
    REQUIRE(std::string(to_string(LPStatus::Unbounded)) == "unbounded");
}

TEST_CASE("fixed-zero columns never enter the solution") {
    LPProblem p;
    p.nVars = 3;
    p.objective = {1.0, 1.0, 1.0};
    p.maximize = true;
    p.rows = {LPRow{{1.0, 1.0, 1.0}, '<', 1.0}};
    p.fixedZero = {0, 1, 0};
    const LPSolution s = solve(p);
    REQUIRE(s.status == LPStatus::Optimal);
    REQUIRE_THAT(s.value, WithinAbs(1.0, 1e-9));
    REQUIRE_THAT(s.x[1], WithinAbs(0.0, 1e-12));
}

TEST_CASE("no-signaling feasibility problem matches the scenario size") {
    const BellScenario sc{2, 3, 2, 2};
    const LPProblem p = ns_box_problem(sc);
    REQUIRE(p.nVars == sc.cells());
    LPProblem probe = p;
    probe.objective.assign(static_cast<std::size_t>(p.nVars), 0.0);
    const LPSolution s = solve(probe);
    REQUIRE(s.status == LPStatus::Optimal);
}

TEST_CASE("random objectives over the polytope satisfy strong duality") {
    const BellScenario sc{2, 2, 2, 2};
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        LPProblem p = ns_box_problem(sc);
        p.objective.clear();
        for (int i = 0; i < sc.cells(); ++i) p.objective.push_back(rng.nextDouble() * 2 - 1);
        p.maximize = (trial % 2 == 0);
        const LPSolution s = solve(p);
        REQUIRE(s.status == LPStatus::Optimal);
        REQUIRE(s.dualFeasResidual >= -1e-7);
        double dualValue = 0;
        for (std::size_t i = 0; i < p.rows.size(); ++i) dualValue += s.dual[i] * p.rows[i].rhs;
        REQUIRE_THAT(dualValue, WithinAbs(s.value, 1e-7));
        // the optimizer must return an actual box
        const ConditionalBox box = witness_box(sc, s);
        REQUIRE(validate_box(box, 1e-7).ok());
    }
}

TEST_CASE("witness extraction refuses non-optimal solutions") {
    LPProblem p;
    p.nVars = 1;
    p.objective = {1.0};
    p.rows = {LPRow{{1.0}, '>', 2.0}, LPRow{{1.0}, '<', 1.0}};
    const LPSolution s = solve(p);
    REQUIRE_THROWS_AS(witness_box(BellScenario{2, 2, 2, 2}, s), SolverError);
}
