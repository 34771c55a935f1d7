#pragma once

#include <string>

#include "errors.hpp"

namespace hardyamp {

/**
 * Two-party Bell scenario: nX/nY measurement settings and nA/nB outcomes.
 *
 * Conditional boxes over a scenario are stored flat in x-major order; index()
 * is the single source of truth for that layout.
 */
struct BellScenario {
    int nX = 2;
    int nY = 2;
    int nA = 2;
    int nB = 2;

    int cells() const { return nX * nY * nA * nB; }

    int index(int x, int y, int a, int b) const {
        return ((x * nY + y) * nA + a) * nB + b;
    }

    bool contains(int x, int y, int a, int b) const {
        return x >= 0 && x < nX && y >= 0 && y < nY && a >= 0 && a < nA && b >= 0 && b < nB;
    }

    void require() const {
        if (nX < 1 || nY < 1 || nA < 1 || nB < 1)
            throw StructuralError("scenario: all setting/outcome counts must be >= 1");
    }

    friend bool operator==(const BellScenario& l, const BellScenario& r) {
        return l.nX == r.nX && l.nY == r.nY && l.nA == r.nA && l.nB == r.nB;
    }
};

/// One outcome-setting combination. Serialized order is [a, b, x, y].
struct Event {
    int a = 0;
    int b = 0;
    int x = 0;
    int y = 0;

    friend bool operator==(const Event& l, const Event& r) {
        return l.a == r.a && l.b == r.b && l.x == r.x && l.y == r.y;
    }
};

inline void require_event(const BellScenario& sc, const Event& e,
                          const std::string& what = "event") {
    if (!sc.contains(e.x, e.y, e.a, e.b))
        throw StructuralError(what + ": event (" + std::to_string(e.a) + "," +
                              std::to_string(e.b) + "," + std::to_string(e.x) + "," +
                              std::to_string(e.y) + ") outside scenario");
}

}  // namespace hardyamp
