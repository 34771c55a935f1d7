#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "extractor.hpp"
#include "gadget.hpp"
#include "polytope.hpp"
#include "protocol.hpp"
#include "quantum.hpp"

namespace hardyamp {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline Json event_to_json(const Event& e) { return Json::array({e.a, e.b, e.x, e.y}); }

inline Event event_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw ParseError("event: expected [a,b,x,y]");
    return Event{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

}  // namespace detail

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        Json j;
        in >> j;
        return j;
    } catch (const std::exception& ex) {
        throw ParseError("'" + path + "': " + ex.what());
    }
}

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

inline Json scenario_to_json(const BellScenario& sc) {
    return Json{{"nX", sc.nX}, {"nY", sc.nY}, {"nA", sc.nA}, {"nB", sc.nB}};
}

inline BellScenario scenario_from_json(const Json& j) {
    try {
        BellScenario sc{j.at("nX").get<int>(), j.at("nY").get<int>(), j.at("nA").get<int>(),
                        j.at("nB").get<int>()};
        sc.require();
        return sc;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("scenario: ") + ex.what());
    }
}

inline Json box_to_json(const ConditionalBox& box) {
    return Json{{"scenario", scenario_to_json(box.scenario())}, {"p", box.table()}};
}

inline ConditionalBox box_from_json(const Json& j) {
    try {
        const BellScenario sc = scenario_from_json(j.at("scenario"));
        const auto p = j.at("p").get<std::vector<double>>();
        return ConditionalBox(sc, p);
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("box: ") + ex.what());
    }
}

inline Json counts_to_json(const CountTable& table) {
    return Json{{"schemaVersion", kSchemaVersion},
                {"scenario", scenario_to_json(table.scenario)},
                {"counts", table.counts}};
}

inline CountTable counts_from_json(const Json& j) {
    try {
        CountTable table;
        table.scenario = scenario_from_json(j.at("scenario"));
        table.counts = j.at("counts").get<std::vector<long long>>();
        table.require();
        return table;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("counts: ") + ex.what());
    }
}

inline Json lp_problem_to_json(const LPProblem& prob) {
    Json rows = Json::array();
    for (const LPRow& r : prob.rows)
        rows.push_back(Json{{"a", r.a}, {"rel", std::string(1, r.rel)}, {"rhs", r.rhs}});
    return Json{{"schemaVersion", kSchemaVersion},
                {"nVars", prob.nVars},
                {"maximize", prob.maximize},
                {"objective", prob.objective},
                {"fixedZero", prob.fixedZero},
                {"rows", rows}};
}

inline Json frame_to_json(const HardyFrame& frame) {
    Json zeros = Json::array();
    for (const Event& e : frame.zeroSet) zeros.push_back(detail::event_to_json(e));
    return Json{{"scenario", scenario_to_json(frame.scenario)},
                {"zeroSet", zeros},
                {"hardyEvent", detail::event_to_json(frame.hardyEvent)}};
}

inline HardyFrame frame_from_json(const Json& j) {
    try {
        HardyFrame frame;
        frame.scenario = scenario_from_json(j.at("scenario"));
        for (const Json& e : j.at("zeroSet")) frame.zeroSet.push_back(detail::event_from_json(e));
        frame.hardyEvent = detail::event_from_json(j.at("hardyEvent"));
        frame.require();
        return frame;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("frame: ") + ex.what());
    }
}

inline Json gadget_to_json(const Gadget& g) {
    return Json{{"dim", g.dim},
                {"vectors", g.vectors},
                {"distinguished", Json::array({g.distinguished.first, g.distinguished.second})}};
}

inline Gadget gadget_from_json(const Json& j) {
    try {
        Gadget g;
        g.dim = j.at("dim").get<int>();
        g.vectors = j.at("vectors").get<std::vector<RealVec>>();
        const Json& d = j.at("distinguished");
        if (!d.is_array() || d.size() != 2) throw ParseError("gadget: distinguished must be [i,j]");
        g.distinguished = {d[0].get<int>(), d[1].get<int>()};
        g.require();
        return g;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("gadget: ") + ex.what());
    }
}

inline Json game_to_json(const GadgetGame& game) {
    Json events = Json::array();
    for (const Event& e : game.hardyEvents) events.push_back(detail::event_to_json(e));
    return Json{{"dim", game.dim},
                {"vectors", game.vectors},
                {"cliques", game.cliques},
                {"distinguished", Json::array({game.distinguished.first, game.distinguished.second})},
                {"hardyEvents", events}};
}

inline GadgetGame game_from_json(const Json& j) {
    try {
        GadgetGame game;
        game.dim = j.at("dim").get<int>();
        game.vectors = j.at("vectors").get<std::vector<RealVec>>();
        game.cliques = j.at("cliques").get<std::vector<std::vector<int>>>();
        const Json& d = j.at("distinguished");
        if (!d.is_array() || d.size() != 2) throw ParseError("game: distinguished must be [i,j]");
        game.distinguished = {d[0].get<int>(), d[1].get<int>()};
        for (const Json& e : j.at("hardyEvents")) game.hardyEvents.push_back(detail::event_from_json(e));
        return game;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("game: ") + ex.what());
    }
}

inline Json state_to_json(const StateVector& psi) {
    Json amps = Json::array();
    for (const Complex& a : psi.amplitudes) amps.push_back(Json::array({a.real(), a.imag()}));
    return Json{{"dim", psi.dim}, {"amplitudes", amps}};
}

inline StateVector state_from_json(const Json& j) {
    try {
        StateVector psi;
        psi.dim = j.at("dim").get<int>();
        for (const Json& a : j.at("amplitudes")) {
            if (!a.is_array() || a.size() != 2) throw ParseError("state: amplitude must be [re,im]");
            psi.amplitudes.emplace_back(a[0].get<double>(), a[1].get<double>());
        }
        psi.require();
        return psi;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("state: ") + ex.what());
    }
}

inline Json certificate_to_json(const EntropyCertificate& c) {
    return Json{{"schemaVersion", kSchemaVersion},
                {"deltaExp", c.deltaExp},
                {"eps", c.eps},
                {"n", c.n},
                {"deltaAz", c.deltaAz},
                {"kappa", c.kappa},
                {"mu", c.mu},
                {"gamma", c.gamma},
                {"hBound", c.hBound},
                {"accepted", c.accepted},
                {"failureProb", c.failureProb}};
}

inline EntropyCertificate certificate_from_json(const Json& j) {
    try {
        EntropyCertificate c;
        c.deltaExp = j.at("deltaExp").get<double>();
        c.eps = j.at("eps").get<double>();
        c.n = j.at("n").get<long long>();
        c.deltaAz = j.at("deltaAz").get<double>();
        c.kappa = j.at("kappa").get<double>();
        c.mu = j.at("mu").get<double>();
        c.gamma = j.at("gamma").get<double>();
        c.hBound = j.at("hBound").get<double>();
        c.accepted = j.at("accepted").get<bool>();
        c.failureProb = j.at("failureProb").get<double>();
        return c;
    } catch (const Json::exception& ex) {
        throw ParseError(std::string("certificate: ") + ex.what());
    }
}

inline Json extractor_params_to_json(const ExtractorParams& p) {
    return Json{{"schemaVersion", kSchemaVersion},
                {"nSV", p.nSV},
                {"n", p.n},
                {"eps", p.eps},
                {"hSV", p.hSV},
                {"hBox", p.hBox},
                {"deltaRaz", p.deltaRaz},
                {"mRaz", p.mRaz},
                {"t", p.t},
                {"kReal", p.kReal},
                {"kFloor", p.kFloor},
                {"Delta", p.Delta},
                {"constraints", Json{{"c1", p.c1}, {"c2", p.c2}, {"c3", p.c3}, {"c4", p.c4}}},
                {"feasible", p.feasible}};
}

}  // namespace hardyamp
