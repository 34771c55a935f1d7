// Acceptance gate: every release criterion as one [PASS]/[FAIL] line.
// Plain executable on purpose: the output is the checklist, the exit code is
// the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hardyamp/io.hpp"

using namespace hardyamp;

namespace {

const std::string kDataDir = HARDYAMP_DATA_DIR;

bool g_ok = true;

void expect(bool cond, const char* what) {
    if (!cond) {
        std::printf("       failed check: %s\n", what);
        g_ok = false;
    }
}

void expect_near(double got, double want, double tol, const char* what) {
    if (!(std::fabs(got - want) <= tol)) {
        std::printf("       failed check: %s (got %.12g, want %.12g, tol %.1e)\n", what, got,
                    want, tol);
        g_ok = false;
    }
}

// 1. peak Hardy probability of the ideal two-qubit box, with exact zeros
bool criterion_ideal_box() {
    const ConditionalBox box = hardy_box(kIdealTheta, 0.0);
    expect_near(box(0, 0, 0, 0), (5.0 * std::sqrt(5.0) - 11.0) / 2.0, 1e-9,
                "P(0,0|0,0) at the optimal angle");
    const HardyFrame frame = hardy222_frame();
    for (const Event& e : frame.zeroSet)
        expect(box(e.x, e.y, e.a, e.b) <= 1e-12, "zero constraint of the ideal box");
    return g_ok;
}

// 2. no-signaling ceiling of the Hardy probability, exact and relaxed zeros
bool criterion_ns_ceiling() {
    const HardyFrame frame = hardy222_frame();
    const PolytopeOptimum exact = max_hardy_exact(frame);
    expect(exact.status == LPStatus::Optimal, "exact-zero LP solves");
    expect_near(exact.value, 0.5, 1e-9, "exact-zero ceiling");
    for (const double z : {0.0, 0.1, 0.5}) {
        const PolytopeOptimum opt = max_hardy_relaxed(frame, z);
        expect(opt.status == LPStatus::Optimal, "relaxed LP solves");
        expect_near(opt.value, (1.0 + z) / 2.0, 1e-9, "relaxed ceiling (1+z)/2");
        expect(validate_box(opt.witness, 1e-7, true).ok(), "tight witness is a valid NS box");
        const HardyQuantities q = hardy_quantities(opt.witness, frame);
        expect_near(q.pH, opt.value, 1e-7, "witness attains the ceiling");
    }
    return g_ok;
}

// 3. per-entry bounds under the weighted gap floor, 100 random feasible cases
bool criterion_entry_bounds() {
    const HardyFrame frame = hardy222_frame();
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const double eps = 0.45 * rng.nextDouble();
        const double q = 0.25 - eps * eps;
        const double floorTarget = 0.4 * rng.nextDouble() + 0.01;
        const double delta = floorTarget * q * q;
        const double gapFloor = delta / (q * q);
        const EntryBounds eb = bound_all_entries(frame, delta, eps);
        expect(eb.status == LPStatus::Optimal, "entry-bound LPs solve");
        if (eb.status != LPStatus::Optimal) return g_ok;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        if (((a + b) % 2) != x * y) continue;
                        const std::size_t i =
                            static_cast<std::size_t>(frame.scenario.index(x, y, a, b));
                        expect_near(eb.upper[i], 1.0 - gapFloor, 1e-7,
                                    "upper bound of a game-satisfying entry");
                        expect_near(eb.lower[i], gapFloor, 1e-7,
                                    "lower bound of a game-satisfying entry");
                    }
        if (!g_ok) return g_ok;
    }
    return g_ok;
}

// 4. two-by-n ceilings and the explicit witness boxes at n = 3
bool criterion_two_by_n() {
    for (int n = 2; n <= 8; ++n)
        for (const double z : {0.0, 0.3}) {
            const TwoByNCeiling ceil = max_pH_2xn(n, z);
            expect_near(ceil.value, (static_cast<double>(n - 1) + z) / n, 1e-8,
                        "2xn ceiling (n-1+z)/n");
        }
    for (const double z : {0.0, 0.3}) {
        const ConditionalBox box = witness_2xn_box(3, z);
        expect(validate_box(box, 1e-9, true).ok(), "explicit n=3 witness is NS");
        const HardyQuantities q = hardy_quantities(box, frame_2xn(3));
        expect_near(q.pH, (2.0 + z) / 3.0, 1e-12, "explicit n=3 witness attains the ceiling");
        expect_near(q.zH, z, 1e-12, "explicit n=3 witness spends the zero budget");
    }
    return g_ok;
}

// 5. CHSH sum minus twice the Hardy gap over the no-signaling polytope
bool criterion_chsh_relation() {
    const PolytopeOptimum opt = min_chsh_minus_two_hardy();
    expect(opt.status == LPStatus::Optimal, "gap LP solves");
    expect_near(opt.value, 3.0, 1e-9, "minimum of CHSH - 2*gap");
    return g_ok;
}

// 6. gadget pipeline: exhaustive verification, compiled game, classical and
//    quantum values
bool criterion_gadget_pipeline() {
    const Gadget g = clifton_gadget();
    const GadgetVerdict v = verify_gadget(g);
    expect(v.isGadget, "distinguished pair can never both be colored 1");
    expect(v.v1Attainable && v.v2Attainable, "each distinguished vertex is 1 in some coloring");

    const GadgetGame game = complete_bases(g);
    expect(game.scenario() == BellScenario{7, 7, 3, 3}, "compiled game is 7 inputs, 3 outcomes");
    expect(game.cliques.size() == 7, "compiled game has the seven bases");

    const double classical = classical_mdl_max(game.frame(), 0.0);
    expect(std::fabs(classical) <= 1e-12, "exhaustive deterministic value is zero");

    const ConditionalBox box = mes_box(game);
    double total = 0.0;
    for (const Event& e : game.hardyEvents) total += box(e.x, e.y, e.a, e.b);
    expect_near(total, 1.0 / 27.0, 1e-9, "shared-state value 1/27");
    return g_ok;
}

// 7. quaternion orthogonality is exact on integers; the identical-distinguished
//    four-copy game is perfect
bool criterion_quaternion() {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        RealVec v(4);
        double norm = 0;
        do {
            norm = 0;
            for (double& c : v) {
                c = static_cast<double>(static_cast<long long>(rng.next() % 19) - 9);
                norm += c * c;
            }
        } while (norm == 0);
        const auto copies = quaternion_copies(v);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                expect(dot(copies[static_cast<std::size_t>(i)],
                           copies[static_cast<std::size_t>(j)]) == 0.0,
                       "quaternion copies are exactly orthogonal");
        if (!g_ok) return g_ok;
    }

    Gadget toy;
    toy.dim = 3;
    toy.vectors = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    toy.distinguished = {0, 0};
    const GadgetGame fc = four_copy_game(toy);
    const ConditionalBox box = mes_box(fc);
    double total = 0;
    for (const Event& e : fc.hardyEvents) total += box(e.x, e.y, e.a, e.b);
    expect_near(total, 1.0, 1e-12, "four-copy game reaches total Hardy probability 1");
    return g_ok;
}

// 8. certification of the bundled counts: entropy bound floor and the output
//    length window
bool criterion_certification() {
    const CountTable counts =
        read_counts_csv_file(kDataDir + "/experiment_counts.csv", BellScenario{2, 2, 2, 2});
    const long long n = counts.total();
    expect(n == 7655734250LL, "fixture total");

    auto checkEps = [&](double eps) {
        const double de = delta_exp_from_counts(counts, eps);
        const HBoundResult hb = h_bound(de, eps, n);
        expect(!hb.aborted && hb.value >= 371.0, "entropy bound stays above 371 bits");
    };
    for (int i = 0; 0.005 * i < 0.2071; ++i) checkEps(0.005 * i);
    checkEps(0.207);

    const KBits k = k_bits(delta_exp_from_counts(counts, 0.1), 0.1, n, 5.0);
    expect(k.kFloor >= 20 && k.kFloor <= 31, "output length window at eps=0.1, t=5");
    return g_ok;
}

// 9. the weighted functional has classical maximum zero at every bias
bool criterion_classical_soundness() {
    const HardyFrame frame = hardy222_frame();
    for (const double eps : {0.0, 0.05, 0.1, 0.2})
        expect(std::fabs(classical_mdl_max(frame, eps)) <= 1e-12,
               "exhaustive deterministic maximum is zero");
    return g_ok;
}

// 10. Monte-Carlo acceptance: honest boxes pass, the deterministic opponent
//     fails, and the near-threshold noisy box still passes
bool criterion_monte_carlo() {
    const double pq = (5.0 * std::sqrt(5.0) - 11.0) / 2.0;
    const long long n = 1000000;

    {
        const double mean = 0.55 * 0.55 * pq * 0.45 * 0.45;
        const double delta = mean / 2.0;
        const SVParams sv{0.05};
        int accepted = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const Transcript t =
                run_protocol(BoxSequenceModel::honest(kIdealTheta, 0.0), sv, n, seed);
            accepted += t.Ln >= delta;
        }
        expect(accepted >= 99, "honest noiseless box accepted in at least 99/100 seeds");

        const ConditionalBox fixed = deterministic_box(BellScenario{2, 2, 2, 2}, {0, 1}, {1, 0});
        const BoxSequenceModel det = BoxSequenceModel::adversarial(
            [&fixed](long long, const std::vector<Event>&) { return fixed; });
        int rejected = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const Transcript t = run_protocol(det, sv, n, seed);
            rejected += t.Ln < delta;
        }
        expect(rejected == 100, "deterministic opponent rejected in 100/100 seeds");
    }

    {
        const double eta = noise_tolerance(0.0) - 0.01;
        const ConditionalBox box = hardy_box(kIdealTheta, eta);
        const BellFunctional f = mdl_functional(hardy222_frame(), 0.0);
        double mean = 0;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) mean += 0.25 * f(x, y, a, b) * box(x, y, a, b);
        const double delta = mean / 2.0;
        int accepted = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const Transcript t =
                run_protocol(BoxSequenceModel::honest(kIdealTheta, eta), SVParams{0.0}, n, seed);
            accepted += t.Ln >= delta;
        }
        expect(accepted > 50, "near-threshold noisy box accepted in a majority of seeds");
    }
    return g_ok;
}

// 11. extractor accounting: exhaustive bias, t shift, and the security budget
bool criterion_extractor() {
    for (int len = 4; len <= 12; ++len) {
        std::vector<int> x(static_cast<std::size_t>(len)), y(static_cast<std::size_t>(len));
        long long diff = 0;
        for (long long xw = 0; xw < (1LL << len); ++xw) {
            for (int i = 0; i < len; ++i)
                x[static_cast<std::size_t>(i)] = static_cast<int>((xw >> i) & 1);
            for (long long yw = 0; yw < (1LL << len); ++yw) {
                for (int i = 0; i < len; ++i)
                    y[static_cast<std::size_t>(i)] = static_cast<int>((yw >> i) & 1);
                diff += cg_extract(x, y) == 0 ? 1 : -1;
            }
        }
        expect(diff == (1LL << len), "exhaustive output bias is exactly 2^-len");
        if (!g_ok) return g_ok;
    }

    const CountTable counts =
        read_counts_csv_file(kDataDir + "/experiment_counts.csv", BellScenario{2, 2, 2, 2});
    const long long n = counts.total();
    const double de = delta_exp_from_counts(counts, 0.1);
    for (const double t : {0.0, 1.0, 5.0, 10.0, 50.0}) {
        const KBits a = k_bits(de, 0.1, n, t);
        const KBits b = k_bits(de, 0.1, n, t + 1.0);
        expect(a.kUnclamped - b.kUnclamped == 0.5, "unit t shift costs exactly half a bit");
    }

    const EntropyCertificate cert = certify(de, SVParams{0.1}, n, 0.0);
    const KBits k = k_bits(de, 0.1, n, 5.0);
    const ExtractorParams xp = raz_check(n, n, 0.1, cert.hBound);
    expect(xp.feasible, "extraction is feasible on the bundled counts");
    const SecurityReport sr =
        security_slack(xp.mRaz, cert.gamma, cert.mu, n, cert.deltaAz, k.kReal, 5.0);
    expect(sr.conditionHolds && sr.dComp <= std::pow(2.0, -5.0),
           "composable slack within the 2^-t budget");
    return g_ok;
}

struct Criterion {
    const char* label;
    bool (*fn)();
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"ideal box: peak Hardy probability, exact zeros", criterion_ideal_box},
        {"(2,2,2) no-signaling ceiling, exact and relaxed", criterion_ns_ceiling},
        {"entry bounds under the gap floor, 100 random cases", criterion_entry_bounds},
        {"2xn ceilings and explicit witnesses", criterion_two_by_n},
        {"CHSH vs twice the Hardy gap", criterion_chsh_relation},
        {"gadget pipeline: verify, compile, classical=0, quantum=1/27", criterion_gadget_pipeline},
        {"quaternion copies and the four-copy game", criterion_quaternion},
        {"counts certification: entropy floor and output window", criterion_certification},
        {"classical soundness of the weighted functional", criterion_classical_soundness},
        {"Monte-Carlo accept/reject behavior", criterion_monte_carlo},
        {"extractor bias, t shift, security budget", criterion_extractor},
    };

    int failures = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        g_ok = true;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = c.fn();
        } catch (const std::exception& ex) {
            std::printf("       exception: %s\n", ex.what());
            ok = false;
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] criterion %2d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", index, c.label,
                    secs);
        if (!ok) ++failures;
    }
    std::printf("acceptance: %d/%d criteria passed\n",
                static_cast<int>(std::size(criteria)) - failures,
                static_cast<int>(std::size(criteria)));
    return failures;
}
