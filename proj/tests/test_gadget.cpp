#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include <hardyamp/gadget.hpp>
#include <hardyamp/polytope.hpp>
#include <hardyamp/quantum.hpp>
#include <hardyamp/rng.hpp>

using namespace hardyamp;
using Catch::Matchers::WithinAbs;

TEST_CASE("the eight-vector gadget verifies with fourteen colorings") {
    const GadgetVerdict v = verify_gadget(clifton_gadget());
    REQUIRE(v.isGadget);
    REQUIRE(v.v1Attainable);
    REQUIRE(v.v2Attainable);
    REQUIRE(v.colorings == 14);
}

TEST_CASE("two non-orthogonal vectors are not a gadget") {
    Gadget g;
    g.dim = 3;
    g.vectors = {{1, 0, 0}, {1, 1, 0}};
    g.distinguished = {0, 1};
    const GadgetVerdict v = verify_gadget(g);
    REQUIRE_FALSE(v.isGadget);
    REQUIRE(v.v1Attainable);
    REQUIRE(v.v2Attainable);
}

TEST_CASE("gadget structure is validated") {
    Gadget adjacent;
    adjacent.dim = 3;
    adjacent.vectors = {{1, 0, 0}, {0, 1, 0}};
    adjacent.distinguished = {0, 1};
    REQUIRE_THROWS_AS(adjacent.require(), StructuralError);

    Gadget big;
    big.dim = 3;
    for (int k = 0; k < 41; ++k) big.vectors.push_back({1.0, static_cast<double>(k), 0.0});
    big.distinguished = {0, 1};
    REQUIRE_THROWS_AS(verify_gadget(big), CapacityError);
}

TEST_CASE("basis completion reproduces the known thirteen-vector game") {
    const GadgetGame game = complete_bases(clifton_gadget());
    REQUIRE(game.vectors.size() == 13);
    const std::vector<std::vector<int>> want = {{0, 1, 8}, {0, 2, 9},  {1, 3, 5}, {2, 4, 6},
                                                {3, 4, 10}, {5, 7, 11}, {6, 7, 12}};
    REQUIRE(game.cliques == want);
    const std::vector<std::vector<double>> completions = {
        {1, -1, 2}, {2, 1, 1}, {0, 1, 0}, {1, 1, 2}, {2, -1, 1}};
    for (std::size_t i = 0; i < completions.size(); ++i)
        REQUIRE(game.vectors[8 + i] == completions[i]);
    REQUIRE(game.scenario() == BellScenario{7, 7, 3, 3});
    REQUIRE(game.hardyEvents.size() == 1);
    const Event h = game.hardyEvents[0];
    REQUIRE(h == Event{0, 1, 0, 6});
    // every clique is mutually orthogonal
    for (const auto& c : game.cliques)
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                REQUIRE(std::abs(dot(game.vectors[static_cast<std::size_t>(c[i])],
                                     game.vectors[static_cast<std::size_t>(c[j])])) <= 1e-12);
}

TEST_CASE("the completed game projects back onto its gadget") {
    const GadgetGame game = complete_bases(clifton_gadget());
    const Gadget g = as_gadget(game);
    REQUIRE(g.dim == 3);
    REQUIRE(g.vectors.size() == game.vectors.size());
    REQUIRE(g.distinguished.first == 0);
    REQUIRE(g.distinguished.second == 7);
    REQUIRE(verify_gadget(g).isGadget);
}

TEST_CASE("the compiled frame carries the cross-orthogonality zero set") {
    const GadgetGame game = complete_bases(clifton_gadget());
    const HardyFrame frame = game.frame();
    REQUIRE_NOTHROW(frame.require());
    REQUIRE(frame.zeroSet.size() == 128);
    REQUIRE(frame.hardyEvent == Event{0, 1, 0, 6});
}

TEST_CASE("quaternion copies are exactly pairwise orthogonal") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(4);
        bool allZero = true;
        for (double& c : v) {
            c = static_cast<double>(static_cast<long long>(rng.next() % 21) - 10);
            if (c != 0.0) allZero = false;
        }
        if (allZero) v[0] = 1.0;
        const auto copies = quaternion_copies(v);
        REQUIRE(copies.size() == 4);
        REQUIRE(copies[0] == v);
        for (std::size_t i = 0; i < 4; ++i) {
            REQUIRE_THAT(dot(copies[i], copies[i]), WithinAbs(dot(v, v), 1e-12));
            for (std::size_t j = i + 1; j < 4; ++j) REQUIRE(dot(copies[i], copies[j]) == 0.0);
        }
    }
    REQUIRE_THROWS_AS(quaternion_copies({1, 0, 0}), StructuralError);
    REQUIRE_THROWS_AS(quaternion_copies({0, 0, 0, 0}), DomainError);
}

TEST_CASE("four copies of a single basis collapse to one clique") {
    Gadget toy;
    toy.dim = 3;
    toy.vectors = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    toy.distinguished = {0, 0};
    const GadgetGame fc = four_copy_game(toy);
    REQUIRE(fc.vectors.size() == 4);
    REQUIRE(fc.cliques.size() == 1);
    REQUIRE(fc.hardyEvents.size() == 4);
    const ConditionalBox box = mes_box(fc);
    double total = 0;
    for (const Event& e : fc.hardyEvents) {
        REQUIRE_THAT(box(e.x, e.y, e.a, e.b), WithinAbs(0.25, 1e-12));
        total += box(e.x, e.y, e.a, e.b);
    }
    REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));
}

TEST_CASE("the four-copy game of the eight-vector gadget") {
    const GadgetGame fc = four_copy_game(clifton_gadget());
    REQUIRE(fc.vectors.size() == 20);
    REQUIRE(fc.scenario() == BellScenario{9, 9, 4, 4});
    REQUIRE(fc.hardyEvents.size() == 4);
    const ConditionalBox box = mes_box(fc);
    double total = 0;
    for (const Event& e : fc.hardyEvents) {
        REQUIRE_THAT(box(e.x, e.y, e.a, e.b), WithinAbs(1.0 / 36.0, 1e-12));
        total += box(e.x, e.y, e.a, e.b);
    }
    REQUIRE_THAT(total, WithinAbs(1.0 / 9.0, 1e-12));
}

TEST_CASE("vertex assignments lift to a no-signaling box") {
    // two bases sharing one vertex
    GadgetGame game;
    game.dim = 3;
    game.vectors = {{-1, 1, 1}, {1, 1, 0}, {1, -1, 2}, {0, 1, -1}, {2, 1, 1}};
    game.cliques = {{0, 1, 2}, {0, 3, 4}};
    game.hardyEvents = {Event{0, 0, 0, 1}};
    const std::vector<double> f = {0.4, 0.3, 0.3, 0.25, 0.35};
    const ConditionalBox box = ns_assignment_box(game, f);
    REQUIRE(validate_box(box, 1e-9).ok());
    // intra-clique statistics are diagonal with the assignment on the diagonal
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double want = (i == j) ? f[static_cast<std::size_t>(i)] : 0.0;
            REQUIRE_THAT(box(0, 0, i, j), WithinAbs(want, 1e-12));
        }
    // the shared vertex stays perfectly correlated across the two bases
    REQUIRE_THAT(box(0, 1, 0, 0), WithinAbs(0.4, 1e-12));
    for (int j = 1; j < 3; ++j) REQUIRE_THAT(box(0, 1, 0, j), WithinAbs(0.0, 1e-12));

    const std::vector<double> badSum = {0.5, 0.3, 0.3, 0.25, 0.35};
    REQUIRE_THROWS_AS(ns_assignment_box(game, badSum), DomainError);
}

TEST_CASE("assignments cannot put weight on orthogonal cross pairs") {
    // two disjoint bases that still contain orthogonal vectors across them
    GadgetGame game;
    game.dim = 3;
    game.vectors = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, -1, 0}, {0, 0, 1}};
    game.cliques = {{0, 1, 2}, {3, 4, 5}};
    game.hardyEvents = {Event{0, 0, 0, 1}};
    const std::vector<double> f(6, 1.0 / 3.0);
    REQUIRE_THROWS_AS(ns_assignment_box(game, f), DomainError);
}
