#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "functional.hpp"
#include "gadget.hpp"
#include "lp.hpp"

namespace hardyamp {

/// Result of one linear optimization over the no-signaling polytope. The
/// witness is a feasible box attaining the value when the status is Optimal,
/// and the all-zero table otherwise.
struct PolytopeOptimum {
    LPStatus status = LPStatus::Optimal;
    double value = 0.0;
    ConditionalBox witness;
    LPSolution solution;
};

namespace detail {

inline PolytopeOptimum optimize(const BellScenario& sc, LPProblem&& prob) {
    LPSolution sol = solve(prob);
    PolytopeOptimum out{sol.status, sol.value, ConditionalBox(sc), {}};
    if (sol.status == LPStatus::Optimal) out.witness = witness_box(sc, sol);
    out.solution = std::move(sol);
    return out;
}

inline LPRow hardy_gap_row(const BellScenario& sc, const HardyFrame& frame, char rel, double rhs) {
    LPRow row;
    row.a.assign(static_cast<std::size_t>(sc.cells()), 0.0);
    row.a[static_cast<std::size_t>(
        sc.index(frame.hardyEvent.x, frame.hardyEvent.y, frame.hardyEvent.a, frame.hardyEvent.b))] += 1.0;
    for (const Event& e : frame.zeroSet)
        row.a[static_cast<std::size_t>(sc.index(e.x, e.y, e.a, e.b))] -= 1.0;
    row.rel = rel;
    row.rhs = rhs;
    return row;
}

}  // namespace detail

/// Maximum Hardy-event probability over no-signaling boxes with every zero
/// constraint enforced exactly.
inline PolytopeOptimum max_hardy_exact(const HardyFrame& frame) {
    frame.require();
    const BellScenario& sc = frame.scenario;
    LPProblem prob = ns_box_problem(sc);
    for (const Event& e : frame.zeroSet)
        prob.fixedZero[static_cast<std::size_t>(sc.index(e.x, e.y, e.a, e.b))] = 1;
    prob.objective.assign(static_cast<std::size_t>(sc.cells()), 0.0);
    prob.objective[static_cast<std::size_t>(
        sc.index(frame.hardyEvent.x, frame.hardyEvent.y, frame.hardyEvent.a, frame.hardyEvent.b))] = 1.0;
    prob.maximize = true;
    return detail::optimize(sc, std::move(prob));
}

/// Maximum Hardy-event probability when the zero events are only constrained
/// in aggregate: their probabilities must sum to zH.
inline PolytopeOptimum max_hardy_relaxed(const HardyFrame& frame, double zH) {
    frame.require();
    if (zH < 0.0 || zH > 1.0) throw DomainError("max_hardy_relaxed: zH outside [0,1]");
    const BellScenario& sc = frame.scenario;
    LPProblem prob = ns_box_problem(sc);
    LPRow row;
    row.a.assign(static_cast<std::size_t>(sc.cells()), 0.0);
    for (const Event& e : frame.zeroSet)
        row.a[static_cast<std::size_t>(sc.index(e.x, e.y, e.a, e.b))] += 1.0;
    row.rel = '=';
    row.rhs = zH;
    prob.rows.push_back(std::move(row));
    prob.objective.assign(static_cast<std::size_t>(sc.cells()), 0.0);
    prob.objective[static_cast<std::size_t>(
        sc.index(frame.hardyEvent.x, frame.hardyEvent.y, frame.hardyEvent.a, frame.hardyEvent.b))] = 1.0;
    prob.maximize = true;
    return detail::optimize(sc, std::move(prob));
}

/// Per-entry bounds over no-signaling boxes whose weighted-gap certificate is
/// at least delta. The certificate value delta, measured with the adversary
/// free to pick any input distribution at bias eps, pins the plain gap
/// p_H − Σ zeros to at least delta / ((1/4 − eps²)²); the table holds the LP
/// minimum and maximum of every box entry under that constraint.
struct EntryBounds {
    LPStatus status = LPStatus::Optimal;
    BellScenario scenario;
    std::vector<double> lower;  ///< indexed by scenario.index(x,y,a,b)
    std::vector<double> upper;
};

inline EntryBounds bound_all_entries(const HardyFrame& frame, double delta, double eps) {
    frame.require();
    const BellScenario& sc = frame.scenario;
    if (!(sc == BellScenario{2, 2, 2, 2}))
        throw StructuralError("bound_all_entries: needs a binary two-setting scenario");
    if (delta < 0) throw DomainError("bound_all_entries: delta < 0");
    if (eps < 0 || eps >= 0.5) throw DomainError("bound_all_entries: eps outside [0, 1/2)");
    const double q = 0.25 - eps * eps;
    const double gapFloor = delta / (q * q);

    LPProblem base = ns_box_problem(sc);
    base.rows.push_back(detail::hardy_gap_row(sc, frame, '>', gapFloor));

    const int cells = sc.cells();
    EntryBounds out;
    out.scenario = sc;
    out.lower.assign(static_cast<std::size_t>(cells), 0.0);
    out.upper.assign(static_cast<std::size_t>(cells), 1.0);
    for (int i = 0; i < cells; ++i) {
        for (bool maximize : {false, true}) {
            LPProblem prob = base;
            prob.objective.assign(static_cast<std::size_t>(cells), 0.0);
            prob.objective[static_cast<std::size_t>(i)] = 1.0;
            prob.maximize = maximize;
            LPSolution sol = solve(prob);
            if (sol.status != LPStatus::Optimal) {
                out.status = sol.status;
                return out;
            }
            (maximize ? out.upper : out.lower)[static_cast<std::size_t>(i)] = sol.value;
        }
    }
    return out;
}

/// LP ceiling for the two-setting/n-setting family, together with the
/// closed-form witness box that attains it.
struct TwoByNCeiling {
    double value = 0.0;               ///< LP maximum of the Hardy probability
    ConditionalBox witness;           ///< LP maximizer
    ConditionalBox explicitWitness;   ///< closed-form box attaining the bound
    LPSolution solution;
};

inline TwoByNCeiling max_pH_2xn(int nBobSettings, double zH) {
    if (nBobSettings < 2) throw DomainError("max_pH_2xn: need at least 2 settings");
    if (nBobSettings > 12) throw CapacityError("max_pH_2xn: more than 12 settings exceeds the LP size guard");
    if (zH < 0.0 || zH > 1.0) throw DomainError("max_pH_2xn: zH outside [0,1]");
    const HardyFrame frame = frame_2xn(nBobSettings);
    PolytopeOptimum opt = max_hardy_relaxed(frame, zH);
    if (opt.status != LPStatus::Optimal)
        throw SolverError(std::string("max_pH_2xn: LP finished ") + to_string(opt.status));
    return TwoByNCeiling{opt.value, std::move(opt.witness), witness_2xn_box(nBobSettings, zH),
                         std::move(opt.solution)};
}

/// Minimum of (CHSH sum) − 2·(Hardy gap) over the full no-signaling polytope
/// of the binary two-setting scenario.
inline PolytopeOptimum min_chsh_minus_two_hardy() {
    const HardyFrame frame = hardy222_frame();
    const BellScenario& sc = frame.scenario;
    LPProblem prob = ns_box_problem(sc);
    prob.objective.assign(static_cast<std::size_t>(sc.cells()), 0.0);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (((a + b) & 1) == (x & y))
                        prob.objective[static_cast<std::size_t>(sc.index(x, y, a, b))] += 1.0;
    prob.objective[static_cast<std::size_t>(
        sc.index(frame.hardyEvent.x, frame.hardyEvent.y, frame.hardyEvent.a, frame.hardyEvent.b))] -= 2.0;
    for (const Event& e : frame.zeroSet)
        prob.objective[static_cast<std::size_t>(sc.index(e.x, e.y, e.a, e.b))] += 2.0;
    prob.maximize = false;
    return detail::optimize(sc, std::move(prob));
}

/// LP certificate that a designated output block stays strictly below
/// probability 1 on one input pair, i.e. that the pair still produces
/// randomness.
struct BlockReport {
    int x = 0;
    int y = 0;
    std::vector<Event> block;    ///< events whose total probability was maximized
    double betaMax = 0.0;        ///< LP maximum of the block probability
    bool strictlyRandom = false; ///< betaMax < 1 beyond LP tolerance
    double margin = 0.0;         ///< 1 − betaMax
};

/**
 * For every input pair sharing Alice's Hardy setting, maximize the designated
 * output block over no-signaling boxes with exact zeros and (optionally) a
 * Hardy probability of at least minHardyProb. In the binary two-setting frame
 * the blocks are the hash-designated output pairs of all four inputs; in the
 * general frame, Bob's block at setting y collects the outcomes not excluded
 * by a zero against Alice's Hardy outcome, and the Hardy pair itself at the
 * Hardy setting.
 */
inline std::vector<BlockReport> randomness_other_inputs(const HardyFrame& frame,
                                                        double minHardyProb = 0.0) {
    frame.require();
    if (minHardyProb < 0.0 || minHardyProb > 1.0)
        throw DomainError("randomness_other_inputs: minHardyProb outside [0,1]");
    const BellScenario& sc = frame.scenario;
    LPProblem base = ns_box_problem(sc);
    for (const Event& e : frame.zeroSet)
        base.fixedZero[static_cast<std::size_t>(sc.index(e.x, e.y, e.a, e.b))] = 1;
    if (minHardyProb > 0.0) {
        LPRow row;
        row.a.assign(static_cast<std::size_t>(sc.cells()), 0.0);
        row.a[static_cast<std::size_t>(sc.index(frame.hardyEvent.x, frame.hardyEvent.y,
                                                frame.hardyEvent.a, frame.hardyEvent.b))] = 1.0;
        row.rel = '>';
        row.rhs = minHardyProb;
        base.rows.push_back(std::move(row));
    }

    std::vector<BlockReport> out;
    auto runBlock = [&](int x, int y, std::vector<Event> block) {
        LPProblem prob = base;
        prob.objective.assign(static_cast<std::size_t>(sc.cells()), 0.0);
        for (const Event& e : block)
            prob.objective[static_cast<std::size_t>(sc.index(e.x, e.y, e.a, e.b))] = 1.0;
        prob.maximize = true;
        LPSolution sol = solve(prob);
        if (sol.status != LPStatus::Optimal)
            throw SolverError(std::string("randomness_other_inputs: block LP finished ") +
                              to_string(sol.status));
        BlockReport r;
        r.x = x;
        r.y = y;
        r.block = std::move(block);
        r.betaMax = sol.value;
        r.strictlyRandom = sol.value < 1.0 - 1e-7;
        r.margin = 1.0 - sol.value;
        out.push_back(std::move(r));
    };

    const bool simplest = sc == BellScenario{2, 2, 2, 2} && frame.hardyEvent == Event{0, 0, 0, 0};
    if (simplest) {
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        if (hash_outputs(x, y, a, b) == 0) runBlock(x, y, {Event{a, b, x, y}});
        return out;
    }
    const Event h = frame.hardyEvent;
    auto isZero = [&](const Event& e) {
        return std::find(frame.zeroSet.begin(), frame.zeroSet.end(), e) != frame.zeroSet.end();
    };
    for (int y = 0; y < sc.nY; ++y) {
        std::vector<Event> block;
        if (y == h.y) {
            block.push_back(h);
        } else {
            for (int b = 0; b < sc.nB; ++b) {
                const Event e{h.a, b, h.x, y};
                if (!isZero(e)) block.push_back(e);
            }
        }
        runBlock(h.x, y, std::move(block));
    }
    return out;
}

/**
 * Turn a vertex assignment f : V → [0,1] into a no-signaling box for the
 * compiled game. Within each input pair the shared vertices are perfectly
 * correlated with mass f(u); the leftover mass couples the non-shared
 * vertices independently. Requires every clique of f to sum to 1, and the
 * resulting box must put no mass on orthogonal cross pairs of distinct
 * vertices.
 */
inline ConditionalBox ns_assignment_box(const GadgetGame& game, const std::vector<double>& f) {
    if (f.size() != game.vectors.size())
        throw StructuralError("ns_assignment_box: assignment size does not match vertex count");
    for (double v : f)
        if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
            throw DomainError("ns_assignment_box: assignment value outside [0,1]");
    for (std::size_t ci = 0; ci < game.cliques.size(); ++ci) {
        double s = 0;
        for (int u : game.cliques[ci]) s += f[static_cast<std::size_t>(u)];
        if (std::abs(s - 1.0) > 1e-9)
            throw DomainError("ns_assignment_box: clique " + std::to_string(ci) + " sums to " +
                              std::to_string(s) + ", expected 1");
    }
    const BellScenario sc = game.scenario();
    ConditionalBox box(sc);
    const int k = static_cast<int>(game.cliques.size());
    for (int x = 0; x < k; ++x) {
        const auto& cx = game.cliques[static_cast<std::size_t>(x)];
        for (int y = 0; y < k; ++y) {
            const auto& cy = game.cliques[static_cast<std::size_t>(y)];
            auto posIn = [](const std::vector<int>& c, int u) {
                auto it = std::find(c.begin(), c.end(), u);
                return it == c.end() ? -1 : static_cast<int>(it - c.begin());
            };
            double shared = 0;
            for (int a = 0; a < game.dim; ++a) {
                const int u = cx[static_cast<std::size_t>(a)];
                const int b = posIn(cy, u);
                if (b >= 0) {
                    box.at(x, y, a, b) = std::max(0.0, f[static_cast<std::size_t>(u)]);
                    shared += std::max(0.0, f[static_cast<std::size_t>(u)]);
                }
            }
            const double rest = 1.0 - shared;
            if (rest > 1e-12) {
                for (int a = 0; a < game.dim; ++a) {
                    const int u = cx[static_cast<std::size_t>(a)];
                    if (posIn(cy, u) >= 0) continue;
                    for (int b = 0; b < game.dim; ++b) {
                        const int v = cy[static_cast<std::size_t>(b)];
                        if (posIn(cx, v) >= 0) continue;
                        box.at(x, y, a, b) =
                            std::max(0.0, f[static_cast<std::size_t>(u)]) *
                            std::max(0.0, f[static_cast<std::size_t>(v)]) / rest;
                    }
                }
            }
            for (int a = 0; a < game.dim; ++a)
                for (int b = 0; b < game.dim; ++b) {
                    const int u = cx[static_cast<std::size_t>(a)];
                    const int v = cy[static_cast<std::size_t>(b)];
                    if (u != v && box.at(x, y, a, b) > 1e-12 &&
                        orthogonal(game.vectors[static_cast<std::size_t>(u)],
                                   game.vectors[static_cast<std::size_t>(v)]))
                        throw DomainError("ns_assignment_box: assignment puts weight " +
                                          std::to_string(box.at(x, y, a, b)) +
                                          " on the orthogonal pair (" + std::to_string(u) + ", " +
                                          std::to_string(v) + ")");
                }
        }
    }
    const ValidationReport rep = validate_box(box, 1e-9, true);
    if (!rep.ok())
        throw DomainError("ns_assignment_box: resulting table is not a valid no-signaling box");
    return box;
}

}  // namespace hardyamp
