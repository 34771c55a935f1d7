#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <hardyamp/frame.hpp>
#include <hardyamp/functional.hpp>
#include <hardyamp/quantum.hpp>

using namespace hardyamp;
using Catch::Matchers::WithinAbs;

TEST_CASE("sv params bound word probabilities") {
    SVParams sv;
    sv.epsilon = 0.1;
    sv.require();
    REQUIRE_THAT(sv.low(), WithinAbs(0.16, 1e-15));
    REQUIRE_THAT(sv.high(), WithinAbs(0.36, 1e-15));
    sv.epsilon = 0.5;
    REQUIRE_THROWS_AS(sv.require(), DomainError);
    sv.epsilon = -0.01;
    REQUIRE_THROWS_AS(sv.require(), DomainError);
    sv.epsilon = 0.0;
    sv.bitsPerRun = 0;
    REQUIRE_THROWS_AS(sv.require(), DomainError);
}

TEST_CASE("input bits count both parties' settings") {
    REQUIRE_THAT(input_bits(BellScenario{2, 2, 2, 2}), WithinAbs(2.0, 1e-15));
    REQUIRE_THAT(input_bits(BellScenario{4, 2, 2, 2}), WithinAbs(3.0, 1e-15));
    REQUIRE_THAT(input_bits(BellScenario{3, 2, 2, 2}), WithinAbs(std::log2(3.0) + 1.0, 1e-12));
}

TEST_CASE("mdl coefficients sit only on the frame events") {
    const HardyFrame frame = hardy222_frame();
    const double eps = 0.1;
    const BellFunctional f = mdl_functional(frame, eps);
    REQUIRE(f.applyToJoint);
    REQUIRE_THAT(f(0, 0, 0, 0), WithinAbs(0.16, 1e-15));
    for (const Event& e : frame.zeroSet)
        REQUIRE_THAT(f(e.x, e.y, e.a, e.b), WithinAbs(-0.36, 1e-15));
    int nonzero = 0;
    for (double c : f.coeff) nonzero += (c != 0.0);
    REQUIRE(nonzero == 4);
    REQUIRE_THROWS_AS(mdl_functional(frame, 0.5), DomainError);
    REQUIRE_THROWS_AS(mdl_functional(frame, 0.0, 0.0), DomainError);
}

TEST_CASE("functional value of the ideal box under uniform inputs") {
    const HardyFrame frame = hardy222_frame();
    const ConditionalBox ideal = hardy_box(kIdealTheta, 0.0);
    const double v = evaluate_functional(mdl_functional(frame, 0.0), ideal,
                                         uniform_inputs(frame.scenario));
    REQUIRE_THAT(v, WithinAbs(kIdealHardyProbability / 16.0, 1e-12));
}

TEST_CASE("functional value of the PR box under uniform inputs") {
    const HardyFrame frame = hardy222_frame();
    const double v = evaluate_functional(mdl_functional(frame, 0.0), pr_box(),
                                         uniform_inputs(frame.scenario));
    REQUIRE_THAT(v, WithinAbs(1.0 / 32.0, 1e-15));
}

TEST_CASE("functional evaluation validates the input distribution") {
    const HardyFrame frame = hardy222_frame();
    const BellFunctional f = mdl_functional(frame, 0.0);
    const ConditionalBox box = uniform_box(frame.scenario);
    REQUIRE_THROWS_AS(evaluate_functional(f, box, {0.5, 0.5}), StructuralError);
    REQUIRE_THROWS_AS(evaluate_functional(f, box, {0.5, 0.5, 0.5, 0.5}), DomainError);
    REQUIRE_THROWS_AS(evaluate_functional(f, box, {0.5, 0.5, 0.5, -0.5}), DomainError);
}

TEST_CASE("joint evaluation is the plain inner product") {
    const HardyFrame frame = hardy222_frame();
    const BellFunctional f = mdl_functional(frame, 0.1);
    std::vector<double> joint(16, 0.0);
    joint[static_cast<std::size_t>(frame.scenario.index(0, 0, 0, 0))] = 0.25;
    joint[static_cast<std::size_t>(frame.scenario.index(0, 1, 0, 1))] = 0.5;
    REQUIRE_THAT(evaluate_on_joint(f, joint), WithinAbs(0.25 * 0.16 - 0.5 * 0.36, 1e-15));
    REQUIRE_THROWS_AS(evaluate_on_joint(f, std::vector<double>(15, 0.0)), StructuralError);
}

TEST_CASE("no deterministic strategy beats zero on the standard frame") {
    const HardyFrame frame = hardy222_frame();
    for (double eps : {0.0, 0.05, 0.1, 0.2, 0.45})
        REQUIRE_THAT(classical_mdl_max(frame, eps), WithinAbs(0.0, 1e-12));
}

TEST_CASE("no deterministic strategy beats zero on the 2xn frames") {
    for (int n : {2, 3, 4})
        for (double eps : {0.0, 0.1})
            REQUIRE_THAT(classical_mdl_max(frame_2xn(n), eps), WithinAbs(0.0, 1e-12));
}

TEST_CASE("an unconstrained frame is saturated at the product weight") {
    HardyFrame frame = hardy222_frame();
    frame.zeroSet.clear();
    for (double eps : {0.0, 0.1, 0.2}) {
        const double want = std::pow(0.5 - eps, 2) * std::pow(0.5 + eps, 2);
        REQUIRE_THAT(classical_mdl_max(frame, eps), WithinAbs(want, 1e-12));
    }
}

TEST_CASE("strategy enumeration refuses oversized scenarios") {
    HardyFrame frame;
    frame.scenario = BellScenario{4, 4, 8, 8};
    frame.hardyEvent = Event{0, 0, 0, 0};
    frame.zeroSet = {Event{0, 1, 0, 1}};
    REQUIRE_THROWS_AS(classical_mdl_max(frame, 0.0), CapacityError);
}

TEST_CASE("chsh sums the designated output pairs") {
    REQUIRE_THAT(chsh_value(pr_box()), WithinAbs(4.0, 1e-15));
    // each setting contributes 1/2 on the uniform box
    REQUIRE_THAT(chsh_value(uniform_box(BellScenario{2, 2, 2, 2})), WithinAbs(2.0, 1e-15));
    REQUIRE_THAT(chsh_value(hardy_box(kIdealTheta, 0.0)),
                 WithinAbs(3.0 + 2.0 * kIdealHardyProbability, 1e-12));
    REQUIRE_THROWS_AS(chsh_value(uniform_box(BellScenario{3, 2, 2, 2})), StructuralError);
}

TEST_CASE("output hash designates one zero cell per input pair") {
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            int zeros = 0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const int h = hash_outputs(x, y, a, b);
                    REQUIRE((h == 0 || h == 1));
                    if (h == 0) {
                        ++zeros;
                        // the designated pair always satisfies the CHSH predicate
                        REQUIRE((a ^ b) == (x & y));
                    }
                }
            REQUIRE(zeros == 1);
        }
    REQUIRE_THROWS_AS(hash_outputs(2, 0, 0, 0), DomainError);
}
