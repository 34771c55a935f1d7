#include <catch2/catch_amalgamated.hpp>

#include <hardyamp/box.hpp>
#include <hardyamp/rng.hpp>
#include <hardyamp/scenario.hpp>

using namespace hardyamp;
using Catch::Matchers::WithinAbs;

TEST_CASE("scenario indexing is a bijection onto [0, cells)") {
    const BellScenario sc{3, 4, 2, 5};
    REQUIRE(sc.cells() == 3 * 4 * 2 * 5);
    std::vector<int> seen(static_cast<std::size_t>(sc.cells()), 0);
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y)
            for (int a = 0; a < sc.nA; ++a)
                for (int b = 0; b < sc.nB; ++b) ++seen[static_cast<std::size_t>(sc.index(x, y, a, b))];
    for (int c : seen) REQUIRE(c == 1);
}

TEST_CASE("scenario rejects non-positive cardinalities") {
    REQUIRE_THROWS_AS((BellScenario{0, 2, 2, 2}.require()), StructuralError);
    REQUIRE_THROWS_AS((BellScenario{2, 2, -1, 2}.require()), StructuralError);
}

TEST_CASE("event bounds are checked against the scenario") {
    const BellScenario sc{2, 2, 2, 2};
    REQUIRE_NOTHROW(require_event(sc, Event{1, 1, 1, 1}));
    REQUIRE_THROWS_AS(require_event(sc, Event{2, 0, 0, 0}), StructuralError);
    REQUIRE_THROWS_AS(require_event(sc, Event{0, 0, 0, -1}), StructuralError);
    REQUIRE(Event{0, 1, 0, 1} == Event{0, 1, 0, 1});
    REQUIRE_FALSE(Event{0, 1, 0, 1} == Event{1, 1, 0, 1});
}

TEST_CASE("uniform box validates and has flat entries") {
    const ConditionalBox box = uniform_box(BellScenario{2, 3, 2, 2});
    REQUIRE(validate_box(box).ok());
    REQUIRE_THAT(box(1, 2, 0, 1), WithinAbs(0.25, 1e-15));
}

TEST_CASE("PR box is no-signaling with half-weight matching cells") {
    const ConditionalBox box = pr_box();
    REQUIRE(validate_box(box).ok());
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const double want = ((a ^ b) == (x & y)) ? 0.5 : 0.0;
                    REQUIRE_THAT(box(x, y, a, b), WithinAbs(want, 1e-15));
                }
}

TEST_CASE("deterministic box places unit mass along the strategy") {
    const BellScenario sc{2, 2, 2, 2};
    const ConditionalBox box = deterministic_box(sc, {0, 1}, {1, 0});
    REQUIRE(validate_box(box).ok());
    REQUIRE(box(0, 0, 0, 1) == 1.0);
    REQUIRE(box(1, 1, 1, 0) == 1.0);
    REQUIRE(box(1, 1, 1, 1) == 0.0);
    REQUIRE_THROWS_AS(deterministic_box(sc, {0, 2}, {0, 0}), StructuralError);
    REQUIRE_THROWS_AS(deterministic_box(sc, {0}, {0, 0}), StructuralError);
}

TEST_CASE("validation reports negative, unnormalized, and signaling tables") {
    const BellScenario sc{2, 2, 2, 2};

    ConditionalBox neg = uniform_box(sc);
    neg.at(0, 0, 0, 0) = -0.1;
    neg.at(0, 0, 1, 1) = 0.6;
    REQUIRE_FALSE(validate_box(neg).ok());

    ConditionalBox unnorm = uniform_box(sc);
    unnorm.at(1, 0, 0, 0) = 0.5;
    REQUIRE_FALSE(validate_box(unnorm).ok());

    // Alice's marginal under x=0 depends on y: signaling.
    ConditionalBox sig(sc);
    sig.at(0, 0, 0, 0) = 1.0;
    sig.at(0, 1, 1, 0) = 1.0;
    sig.at(1, 0, 0, 0) = 1.0;
    sig.at(1, 1, 0, 0) = 1.0;
    const ValidationReport rep = validate_box(sig);
    REQUIRE_FALSE(rep.ok());
    REQUIRE_FALSE(rep.violations.empty());
    REQUIRE_FALSE(rep.violations.front().constraint.empty());
    // The same table passes once the no-signaling equalities are waived.
    REQUIRE(validate_box(sig, 1e-9, false).ok());
}

TEST_CASE("box constructor rejects wrong table sizes") {
    const BellScenario sc{2, 2, 2, 2};
    REQUIRE_THROWS_AS(ConditionalBox(sc, std::vector<double>(15, 0.0)), StructuralError);
}

TEST_CASE("splitmix64 matches the reference sequence") {
    SplitMix64 g(0);
    REQUIRE(g.next() == 0xE220A8397B1DCDAFULL);
    REQUIRE(g.next() == 0x6E789E6AA1B965F4ULL);
    REQUIRE(g.next() == 0x06C45D188009454FULL);
}

TEST_CASE("prng doubles stay in the unit interval and repeat per seed") {
    SplitMix64 a(123), b(123);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.nextDouble();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(u == b.nextDouble());
    }
    REQUIRE_FALSE(SplitMix64(1).next() == SplitMix64(2).next());
}

TEST_CASE("bernoulli draws respect the edge probabilities") {
    SplitMix64 g(7);
    for (int i = 0; i < 100; ++i) REQUIRE_FALSE(g.nextBool(0.0));
    for (int i = 0; i < 100; ++i) REQUIRE(g.nextBool(1.0));
}

TEST_CASE("derived streams differ from the parent and from each other") {
    const std::uint64_t s0 = SplitMix64::stream(42, 0).next();
    const std::uint64_t s1 = SplitMix64::stream(42, 1).next();
    const std::uint64_t s0again = SplitMix64::stream(42, 0).next();
    REQUIRE(s0 == s0again);
    REQUIRE(s0 != s1);
}
