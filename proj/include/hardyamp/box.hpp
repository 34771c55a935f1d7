#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "scenario.hpp"

namespace hardyamp {

/**
 * Conditional probability table P(a,b|x,y) over a Bell scenario.
 *
 * Entries are plain doubles; validity (nonnegativity, normalization per
 * setting pair, no-signaling marginals) is checked by validate_box, never
 * assumed by construction.
 */
class ConditionalBox {
public:
    ConditionalBox(BellScenario sc, std::vector<double> p) : sc_(sc), p_(std::move(p)) {
        sc_.require();
        if (static_cast<int>(p_.size()) != sc_.cells())
            throw StructuralError("box: table size " + std::to_string(p_.size()) +
                                  " != scenario cells " + std::to_string(sc_.cells()));
    }

    explicit ConditionalBox(BellScenario sc) : ConditionalBox(sc, std::vector<double>(sc.cells(), 0.0)) {}

    const BellScenario& scenario() const { return sc_; }

    double operator()(int x, int y, int a, int b) const { return p_[sc_.index(x, y, a, b)]; }
    double& at(int x, int y, int a, int b) { return p_[sc_.index(x, y, a, b)]; }

    const std::vector<double>& table() const { return p_; }
    std::vector<double>& table() { return p_; }

    /// Alice marginal P(a|x) computed from setting pair (x, y).
    double marginalA(int x, int a, int y) const {
        double s = 0;
        for (int b = 0; b < sc_.nB; ++b) s += (*this)(x, y, a, b);
        return s;
    }

    /// Bob marginal P(b|y) computed from setting pair (x, y).
    double marginalB(int y, int b, int x) const {
        double s = 0;
        for (int a = 0; a < sc_.nA; ++a) s += (*this)(x, y, a, b);
        return s;
    }

private:
    BellScenario sc_;
    std::vector<double> p_;
};

/// One violated constraint: which equation failed and by how much.
struct Violation {
    std::string constraint;
    double residual = 0.0;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/**
 * Check nonnegativity, per-setting normalization, and (optionally) the
 * no-signaling marginal equalities, reporting every violated equation with
 * its residual. An empty report means the box is valid at tolerance tol.
 */
inline ValidationReport validate_box(const ConditionalBox& box, double tol = 1e-9,
                                     bool requireNoSignaling = true) {
    const BellScenario& sc = box.scenario();
    ValidationReport rep;
    auto flag = [&](std::string what, double residual) {
        rep.violations.push_back({std::move(what), residual});
    };

    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y) {
            double sum = 0;
            for (int a = 0; a < sc.nA; ++a)
                for (int b = 0; b < sc.nB; ++b) {
                    double v = box(x, y, a, b);
                    if (v < -tol)
                        flag("P(" + std::to_string(a) + "," + std::to_string(b) + "|" +
                                 std::to_string(x) + "," + std::to_string(y) + ") >= 0",
                             -v);
                    sum += v;
                }
            if (std::abs(sum - 1.0) > tol)
                flag("sum_ab P(a,b|" + std::to_string(x) + "," + std::to_string(y) + ") = 1",
                     std::abs(sum - 1.0));
        }

    if (requireNoSignaling) {
        for (int x = 0; x < sc.nX; ++x)
            for (int a = 0; a < sc.nA; ++a)
                for (int y = 1; y < sc.nY; ++y) {
                    double r = box.marginalA(x, a, y) - box.marginalA(x, a, 0);
                    if (std::abs(r) > tol)
                        flag("P_A(" + std::to_string(a) + "|" + std::to_string(x) +
                                 ") independent of y=" + std::to_string(y),
                             std::abs(r));
                }
        for (int y = 0; y < sc.nY; ++y)
            for (int b = 0; b < sc.nB; ++b)
                for (int x = 1; x < sc.nX; ++x) {
                    double r = box.marginalB(y, b, x) - box.marginalB(y, b, 0);
                    if (std::abs(r) > tol)
                        flag("P_B(" + std::to_string(b) + "|" + std::to_string(y) +
                                 ") independent of x=" + std::to_string(x),
                             std::abs(r));
                }
    }
    return rep;
}

/// Maximally mixed box: P(a,b|x,y) = 1/(nA*nB).
inline ConditionalBox uniform_box(BellScenario sc) {
    sc.require();
    return ConditionalBox(sc, std::vector<double>(sc.cells(), 1.0 / (sc.nA * sc.nB)));
}

/// Popescu-Rohrlich box on (2,2,2): uniform marginals, a xor b = x*y always.
inline ConditionalBox pr_box() {
    ConditionalBox box(BellScenario{2, 2, 2, 2});
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (x & y)) box.at(x, y, a, b) = 0.5;
    return box;
}

/// Local deterministic box from per-party strategies a = f[x], b = g[y].
inline ConditionalBox deterministic_box(BellScenario sc, const std::vector<int>& f,
                                        const std::vector<int>& g) {
    sc.require();
    if (static_cast<int>(f.size()) != sc.nX || static_cast<int>(g.size()) != sc.nY)
        throw StructuralError("deterministic_box: strategy length mismatch");
    ConditionalBox box(sc);
    for (int x = 0; x < sc.nX; ++x) {
        if (f[x] < 0 || f[x] >= sc.nA) throw StructuralError("deterministic_box: f out of range");
        for (int y = 0; y < sc.nY; ++y) {
            if (g[y] < 0 || g[y] >= sc.nB)
                throw StructuralError("deterministic_box: g out of range");
            box.at(x, y, f[x], g[y]) = 1.0;
        }
    }
    return box;
}

}  // namespace hardyamp
