#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "frame.hpp"

namespace hardyamp {

/**
 * Santha-Vazirani source parameters. Every emitted bit, conditioned on all
 * previous bits, has probability within [1/2-epsilon, 1/2+epsilon] of either
 * value; a bitsPerRun-bit input word therefore has probability within
 * [low(), high()].
 */
struct SVParams {
    double epsilon = 0.0;
    int bitsPerRun = 2;

    void require() const {
        if (!(epsilon >= 0.0 && epsilon < 0.5))
            throw DomainError("SVParams: epsilon outside [0, 1/2)");
        if (bitsPerRun < 1) throw DomainError("SVParams: bitsPerRun < 1");
    }
    double low() const { return std::pow(0.5 - epsilon, bitsPerRun); }
    double high() const { return std::pow(0.5 + epsilon, bitsPerRun); }
};

/**
 * Linear functional over a Bell scenario: a real coefficient per (x,y,a,b)
 * cell. When applyToJoint is set the coefficients are meant to weight joint
 * frequencies f(a,b,x,y); otherwise they weight conditional entries
 * p(a,b|x,y) directly.
 */
struct BellFunctional {
    BellScenario scenario;
    std::vector<double> coeff;
    bool applyToJoint = false;

    double& at(int x, int y, int a, int b) { return coeff.at(scenario.index(x, y, a, b)); }
    double operator()(int x, int y, int a, int b) const {
        return coeff.at(scenario.index(x, y, a, b));
    }
    void require() const {
        scenario.require();
        if (coeff.size() != static_cast<std::size_t>(scenario.cells()))
            throw StructuralError("BellFunctional: coefficient table size mismatch");
    }
};

/// Bits needed to choose one input pair: log2(nX) + log2(nY). Exact for
/// power-of-two setting counts, real-valued otherwise; callers working in a
/// non-power-of-two scenario see the fractional value explicitly.
inline double input_bits(const BellScenario& sc) {
    sc.require();
    return std::log2(static_cast<double>(sc.nX)) + std::log2(static_cast<double>(sc.nY));
}

/**
 * Measurement-dependent-locality functional for a Hardy frame: coefficient
 * +(1/2-eps)^bits on the distinguished event, -(1/2+eps)^bits on each zero
 * event, 0 elsewhere. Coefficients weight joint frequencies; when evaluated
 * on a conditional box the input distribution multiplies in separately.
 */
inline BellFunctional mdl_functional(const HardyFrame& frame, double eps, double bits) {
    frame.require();
    if (!(eps >= 0.0 && eps < 0.5)) throw DomainError("mdl_functional: eps outside [0, 1/2)");
    if (!(bits > 0.0)) throw DomainError("mdl_functional: bits must be positive");
    BellFunctional f;
    f.scenario = frame.scenario;
    f.coeff.assign(static_cast<std::size_t>(frame.scenario.cells()), 0.0);
    f.applyToJoint = true;
    const Event& h = frame.hardyEvent;
    f.at(h.x, h.y, h.a, h.b) = std::pow(0.5 - eps, bits);
    const double zc = -std::pow(0.5 + eps, bits);
    for (const Event& e : frame.zeroSet) f.at(e.x, e.y, e.a, e.b) = zc;
    return f;
}

inline BellFunctional mdl_functional(const HardyFrame& frame, double eps) {
    return mdl_functional(frame, eps, input_bits(frame.scenario));
}

/// Value of the functional on a box under input distribution nu(x,y)
/// (flattened x-major, normalized): sum of nu * coeff * p over all cells.
inline double evaluate_functional(const BellFunctional& f, const ConditionalBox& box,
                                  const std::vector<double>& inputDist) {
    f.require();
    if (!(f.scenario == box.scenario()))
        throw StructuralError("evaluate_functional: functional/box scenario mismatch");
    const BellScenario& sc = f.scenario;
    if (inputDist.size() != static_cast<std::size_t>(sc.nX * sc.nY))
        throw StructuralError("evaluate_functional: input distribution size mismatch");
    double total = 0, value = 0;
    for (double w : inputDist) {
        if (w < -1e-12) throw DomainError("evaluate_functional: negative input weight");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw DomainError("evaluate_functional: input distribution not normalized");
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y) {
            const double nu = inputDist[static_cast<std::size_t>(x * sc.nY + y)];
            if (nu == 0.0) continue;
            for (int a = 0; a < sc.nA; ++a)
                for (int b = 0; b < sc.nB; ++b)
                    value += nu * f(x, y, a, b) * box(x, y, a, b);
        }
    return value;
}

/// Uniform input distribution over the scenario's (x,y) pairs.
inline std::vector<double> uniform_inputs(const BellScenario& sc) {
    sc.require();
    return std::vector<double>(static_cast<std::size_t>(sc.nX * sc.nY),
                               1.0 / (sc.nX * sc.nY));
}

/// Value of the functional on a joint frequency table f(a,b,x,y) indexed like
/// a box: plain inner product (the input distribution is already folded in).
inline double evaluate_on_joint(const BellFunctional& f, const std::vector<double>& joint) {
    f.require();
    if (joint.size() != f.coeff.size())
        throw StructuralError("evaluate_on_joint: joint table size mismatch");
    double value = 0;
    for (std::size_t i = 0; i < joint.size(); ++i) value += f.coeff[i] * joint[i];
    return value;
}

namespace detail {

/// Best achievable functional mass for one deterministic strategy summary:
/// one input worth +posCoeff (optional), m inputs worth -negCoeff, the rest
/// worth 0, maximized over input distributions in [low,high]^K on the
/// simplex by greedy waterfilling.
inline double waterfill_value(int K, bool hasPositive, int m, double posCoeff,
                              double negCoeff, double low, double high) {
    if (K * low > 1.0 + 1e-12 || K * high < 1.0 - 1e-12)
        throw DomainError("classical_mdl_max: no input distribution fits the SV bounds");
    double remaining = std::max(0.0, 1.0 - K * low);
    const double cap = std::max(0.0, high - low);
    double value = 0;
    if (hasPositive) {
        const double add = std::min(cap, remaining);
        remaining -= add;
        value += posCoeff * (low + add);
    }
    const int neutral = K - m - (hasPositive ? 1 : 0);
    remaining -= std::min(remaining, neutral * cap);
    // whatever the neutral inputs cannot absorb is forced onto the penalized ones
    value -= negCoeff * (m * low + remaining);
    return value;
}

}  // namespace detail

/**
 * Exact maximum of the MDL value over all deterministic local strategies and
 * all input distributions compatible with the SV bounds at this eps. Zero or
 * negative for every valid Hardy frame; strictly positive means some local
 * strategy reaches the distinguished event without touching the zero set.
 *
 * The outcome at each input contributes at most one coefficient, so a
 * strategy is summarized by (distinguished event fired, number of inputs
 * hitting the zero set); minimizing zero hits decomposes per Bob setting once
 * Alice's strategy is fixed, which keeps the search exact without walking all
 * nA^nX * nB^nY pairs. The pair-count capacity guard still applies.
 */
inline double classical_mdl_max(const HardyFrame& frame, double eps) {
    frame.require();
    if (!(eps >= 0.0 && eps < 0.5)) throw DomainError("classical_mdl_max: eps outside [0, 1/2)");
    const BellScenario& sc = frame.scenario;
    const double pairs = std::pow(static_cast<double>(sc.nA), sc.nX) *
                         std::pow(static_cast<double>(sc.nB), sc.nY);
    if (pairs > 1e7)
        throw CapacityError("classical_mdl_max: " + std::to_string(pairs) +
                            " deterministic strategy pairs exceeds the 1e7 cap");

    const double bits = input_bits(sc);
    const double low = std::pow(0.5 - eps, bits);
    const double high = std::pow(0.5 + eps, bits);
    const int K = sc.nX * sc.nY;

    // zero-set membership indicator, indexed like a box
    std::vector<unsigned char> isZero(static_cast<std::size_t>(sc.cells()), 0);
    for (const Event& e : frame.zeroSet) isZero[static_cast<std::size_t>(sc.index(e.x, e.y, e.a, e.b))] = 1;

    // value depends on the summary only; precompute both branches per m
    std::vector<double> valuePlain(static_cast<std::size_t>(K) + 1), valueHardy(valuePlain.size());
    for (int m = 0; m <= K; ++m) {
        valuePlain[static_cast<std::size_t>(m)] =
            detail::waterfill_value(K, false, m, low, high, low, high);
        if (m < K)
            valueHardy[static_cast<std::size_t>(m)] =
                detail::waterfill_value(K, true, m, low, high, low, high);
    }

    const Event& h = frame.hardyEvent;
    std::vector<int> fA(static_cast<std::size_t>(sc.nX), 0);
    double best = -std::numeric_limits<double>::infinity();
    // zeroHits[y][b] = number of Alice settings whose outcome under fA lands
    // in the zero set when Bob answers b at setting y
    std::vector<std::vector<int>> zeroHits(static_cast<std::size_t>(sc.nY),
                                           std::vector<int>(static_cast<std::size_t>(sc.nB), 0));
    while (true) {
        for (auto& row : zeroHits) std::fill(row.begin(), row.end(), 0);
        for (int x = 0; x < sc.nX; ++x)
            for (int y = 0; y < sc.nY; ++y)
                for (int b = 0; b < sc.nB; ++b)
                    zeroHits[static_cast<std::size_t>(y)][static_cast<std::size_t>(b)] +=
                        isZero[static_cast<std::size_t>(sc.index(x, y, fA[static_cast<std::size_t>(x)], b))];

        int mFree = 0;
        for (int y = 0; y < sc.nY; ++y) {
            int mn = zeroHits[static_cast<std::size_t>(y)][0];
            for (int b = 1; b < sc.nB; ++b) mn = std::min(mn, zeroHits[static_cast<std::size_t>(y)][static_cast<std::size_t>(b)]);
            mFree += mn;
        }
        best = std::max(best, valuePlain[static_cast<std::size_t>(mFree)]);

        if (fA[static_cast<std::size_t>(h.x)] == h.a) {
            int mForced = zeroHits[static_cast<std::size_t>(h.y)][static_cast<std::size_t>(h.b)];
            for (int y = 0; y < sc.nY; ++y) {
                if (y == h.y) continue;
                int mn = zeroHits[static_cast<std::size_t>(y)][0];
                for (int b = 1; b < sc.nB; ++b) mn = std::min(mn, zeroHits[static_cast<std::size_t>(y)][static_cast<std::size_t>(b)]);
                mForced += mn;
            }
            best = std::max(best, valueHardy[static_cast<std::size_t>(mForced)]);
        }

        int x = 0;
        while (x < sc.nX && ++fA[static_cast<std::size_t>(x)] == sc.nA) {
            fA[static_cast<std::size_t>(x)] = 0;
            ++x;
        }
        if (x == sc.nX) break;
    }
    return best;
}

/// CHSH sum over a (2,2,2) box: total probability of a XOR b = x AND y.
inline double chsh_value(const ConditionalBox& box) {
    const BellScenario& sc = box.scenario();
    if (!(sc == BellScenario{2, 2, 2, 2}))
        throw StructuralError("chsh_value: requires a (2,2,2) scenario box");
    double s = 0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (x & y)) s += box(x, y, a, b);
    return s;
}

/**
 * Output hash for the estimation rounds of a (2,2,2) run: S = 0 exactly on
 * one designated CHSH-satisfying output pair per input pair, S = 1 otherwise.
 * Designated pairs: (a,b) = (0,1) for input (1,1), (0,0) for every other
 * input.
 */
inline int hash_outputs(int x, int y, int a, int b) {
    if (x < 0 || x > 1 || y < 0 || y > 1 || a < 0 || a > 1 || b < 0 || b > 1)
        throw DomainError("hash_outputs: arguments must be bits");
    const int da = 0;
    const int db = (x == 1 && y == 1) ? 1 : 0;
    return (a == da && b == db) ? 0 : 1;
}

}  // namespace hardyamp
