#pragma once

#include <algorithm>
#include <vector>

#include "box.hpp"
#include "scenario.hpp"

namespace hardyamp {

/**
 * A Hardy frame: the events that must have probability zero plus the one
 * distinguished event whose probability is the paradox value. A frame is
 * "valid" in the paradox sense when no local deterministic box can make the
 * distinguished event fire while honoring the zeros; that property is checked
 * by enumeration elsewhere (classical_mdl_max), not assumed here.
 */
struct HardyFrame {
    BellScenario scenario;
    std::vector<Event> zeroSet;
    Event hardyEvent;

    void require() const {
        scenario.require();
        require_event(scenario, hardyEvent, "frame hardyEvent");
        for (const Event& e : zeroSet) {
            require_event(scenario, e, "frame zeroSet");
            if (e == hardyEvent)
                throw StructuralError("frame: hardyEvent appears in zeroSet");
        }
        for (std::size_t i = 0; i < zeroSet.size(); ++i)
            for (std::size_t j = i + 1; j < zeroSet.size(); ++j)
                if (zeroSet[i] == zeroSet[j])
                    throw StructuralError("frame: duplicate zeroSet event");
    }
};

/// pH  = probability of the distinguished event,
/// zH  = total probability on the zero set,
/// bH  = pH - zH (the exact-zero paradox margin).
struct HardyQuantities {
    double pH = 0;
    double zH = 0;
    double bH = 0;
};

inline HardyQuantities hardy_quantities(const ConditionalBox& box, const HardyFrame& frame) {
    frame.require();
    if (!(box.scenario() == frame.scenario))
        throw StructuralError("hardy_quantities: box/frame scenario mismatch");
    HardyQuantities q;
    q.pH = box(frame.hardyEvent.x, frame.hardyEvent.y, frame.hardyEvent.a, frame.hardyEvent.b);
    for (const Event& e : frame.zeroSet) q.zH += box(e.x, e.y, e.a, e.b);
    q.bH = q.pH - q.zH;
    return q;
}

/// The minimal two-setting two-outcome Hardy frame: distinguished event
/// (a,b,x,y) = (0,0,0,0), zeros at (0,1,0,1), (1,0,1,0), (0,0,1,1).
inline HardyFrame hardy222_frame() {
    HardyFrame f;
    f.scenario = BellScenario{2, 2, 2, 2};
    f.hardyEvent = Event{0, 0, 0, 0};
    f.zeroSet = {Event{0, 1, 0, 1}, Event{1, 0, 1, 0}, Event{0, 0, 1, 1}};
    return f;
}

/**
 * Ceiling-saturating box for the canonical 2-settings-vs-n-settings frame
 * (n outcomes per setting). At zH = 0 the distinguished event reaches
 * (n-1)/n; mass zH on the zero set lifts it to (n-1+zH)/n.
 *
 * Block structure (x is Alice's setting, y Bob's):
 *   (0,0):   P(0,0) = (n-1+zH)/n, P(1,n-1) = (1-zH)/n
 *   (0,k>0): P(0,j) = 1/n for j<n-1, P(0,n-1) = zH/n, P(1,n-1) = (1-zH)/n
 *   (1,0):   P(j,0) = 1/n for j<n-1, P(n-1,0) = zH/n, P(n-1,n-1) = (1-zH)/n
 *   (1,k>0): P(j, (j+n-k) mod n) = 1/n
 */
inline ConditionalBox witness_2xn_box(int n, double zH) {
    if (n < 2) throw DomainError("witness_2xn_box: need n >= 2");
    if (zH < 0 || zH > 1) throw DomainError("witness_2xn_box: zH outside [0,1]");
    ConditionalBox box(BellScenario{2, n, n, n});
    box.at(0, 0, 0, 0) = (n - 1 + zH) / n;
    box.at(0, 0, 1, n - 1) = (1 - zH) / n;
    for (int k = 1; k < n; ++k) {
        for (int j = 0; j < n - 1; ++j) box.at(0, k, 0, j) = 1.0 / n;
        box.at(0, k, 0, n - 1) = zH / n;
        box.at(0, k, 1, n - 1) = (1 - zH) / n;
    }
    for (int j = 0; j < n - 1; ++j) box.at(1, 0, j, 0) = 1.0 / n;
    box.at(1, 0, n - 1, 0) = zH / n;
    box.at(1, 0, n - 1, n - 1) = (1 - zH) / n;
    for (int k = 1; k < n; ++k)
        for (int j = 0; j < n; ++j) box.at(1, k, j, (j + n - k) % n) = 1.0 / n;
    return box;
}

/// No-signaling box saturating the (2,2,2) frame ceiling: the distinguished
/// event reaches (1+zH)/2 while the zero events carry total mass zH.
inline ConditionalBox saturating222_box(double zH) { return witness_2xn_box(2, zH); }

/// Canonical 2-vs-n Hardy frame: the zero set is every cell the noiseless
/// witness box leaves empty, with distinguished event (0,0,0,0).
inline HardyFrame frame_2xn(int n) {
    ConditionalBox w = witness_2xn_box(n, 0.0);
    HardyFrame f;
    f.scenario = w.scenario();
    f.hardyEvent = Event{0, 0, 0, 0};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < n; ++y)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (w(x, y, a, b) == 0.0) f.zeroSet.push_back(Event{a, b, x, y});
    return f;
}

}  // namespace hardyamp
