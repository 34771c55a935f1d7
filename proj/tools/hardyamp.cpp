// hardyamp: command-line surface for the header-only library.
//
// Subcommands: validate, bound, mdl, certify, krate, simulate, gadget,
// extract. Exit codes are stable across commands: 0 success/accept,
// 2 failed check or protocol abort, 3 infeasible accounting, 4 input error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <hardyamp/hardyamp.hpp>

namespace {

using namespace hardyamp;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInputError = 4;

/// HARDYAMP_THREADS caps worker threads for commands that fan out
/// (currently the krate sweep). Unset means hardware concurrency.
int thread_cap() {
    const char* raw = std::getenv("HARDYAMP_THREADS");
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (raw == nullptr || *raw == '\0') return static_cast<int>(hw);
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1)
        throw DomainError("HARDYAMP_THREADS must be a positive integer");
    return static_cast<int>(std::min<long>(v, hw));
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Count tables arrive either as `a,b,x,y,count` CSV or as the JSON
/// equivalent produced by counts_to_json.
CountTable ingest_counts(const std::string& path, const BellScenario& sc) {
    if (ends_with(path, ".json")) return counts_from_json(load_json_file(path));
    return read_counts_csv_file(path, sc);
}

HardyFrame load_frame(const std::string& path) {
    if (path.empty()) return hardy222_frame();
    return frame_from_json(load_json_file(path));
}

void emit_report(const Json& report, const std::string& outPath) {
    if (!outPath.empty()) save_json_file(outPath, report);
}

Json validation_to_json(const ValidationReport& rep) {
    Json violations = Json::array();
    for (const Violation& v : rep.violations)
        violations.push_back(Json{{"constraint", v.constraint}, {"residual", v.residual}});
    return Json{{"schemaVersion", kSchemaVersion}, {"ok", rep.ok()}, {"violations", violations}};
}

Json security_to_json(const SecurityReport& sr) {
    return Json{{"schemaVersion", kSchemaVersion},
                {"epsAz", sr.epsAz},
                {"failureProb", sr.failureProb},
                {"dist", sr.dist},
                {"Delta", sr.dComp},
                {"qBitBound", sr.qBitBound},
                {"t", sr.t},
                {"conditionHolds", sr.conditionHolds},
                {"conditionedOn", sr.conditionedOn}};
}

// ------------------------------------------------------------------ validate

struct ValidateOpts {
    std::string in;
    std::string out;
    double tol = 1e-9;
    bool skipNoSignaling = false;
};

int cmd_validate(const ValidateOpts& o) {
    const ConditionalBox box = box_from_json(load_json_file(o.in));
    const ValidationReport rep = validate_box(box, o.tol, !o.skipNoSignaling);
    for (const Violation& v : rep.violations)
        std::fprintf(stderr, "violation: %s residual=%.3e\n", v.constraint.c_str(), v.residual);
    std::printf("ok: %s\n", rep.ok() ? "true" : "false");
    emit_report(validation_to_json(rep), o.out);
    return rep.ok() ? kExitOk : kExitCheckFailed;
}

// --------------------------------------------------------------------- bound

struct BoundOpts {
    std::string frame;
    std::string objective = "pH";
    std::string zeros = "exact";
    double zH = 0.0;
    double delta = 0.01;
    double eps = 0.0;
    double minHardy = 0.0;
    std::string dumpLp;
    std::string out;
};

/// Rebuild the LP behind `bound --objective pH --zeros exact` so it can be
/// dumped for debugging. Must stay in sync with max_hardy_exact.
LPProblem hardy_ceiling_problem(const HardyFrame& frame) {
    const BellScenario& sc = frame.scenario;
    LPProblem prob = ns_box_problem(sc);
    for (const Event& e : frame.zeroSet)
        prob.fixedZero[static_cast<std::size_t>(sc.index(e.x, e.y, e.a, e.b))] = 1;
    prob.objective.assign(static_cast<std::size_t>(sc.cells()), 0.0);
    prob.objective[static_cast<std::size_t>(
        sc.index(frame.hardyEvent.x, frame.hardyEvent.y, frame.hardyEvent.a, frame.hardyEvent.b))] = 1.0;
    prob.maximize = true;
    return prob;
}

int cmd_bound(const BoundOpts& o) {
    const HardyFrame frame = load_frame(o.frame);
    if (o.objective == "pH") {
        if (!o.dumpLp.empty()) {
            if (o.zeros != "exact")
                throw DomainError("--dump-lp supports --zeros exact only");
            save_json_file(o.dumpLp, lp_problem_to_json(hardy_ceiling_problem(frame)));
        }
        const PolytopeOptimum opt = o.zeros == "exact"   ? max_hardy_exact(frame)
                                    : o.zeros == "relaxed" ? max_hardy_relaxed(frame, o.zH)
                                                           : throw DomainError("--zeros must be exact or relaxed");
        std::printf("status: %s\nbound: %.12f\n", to_string(opt.status), opt.value);
        Json report{{"schemaVersion", kSchemaVersion}, {"objective", o.objective},
                    {"zeros", o.zeros},               {"zH", o.zH},
                    {"status", to_string(opt.status)}, {"value", opt.value},
                    {"iterations", opt.solution.iterations}};
        if (opt.status == LPStatus::Optimal) report["witness"] = box_to_json(opt.witness);
        emit_report(report, o.out);
        return opt.status == LPStatus::Optimal ? kExitOk : kExitInfeasible;
    }
    if (o.objective == "table") {
        const EntryBounds eb = bound_all_entries(frame, o.delta, o.eps);
        const BellScenario& sc = eb.scenario;
        for (int x = 0; x < sc.nX; ++x)
            for (int y = 0; y < sc.nY; ++y)
                for (int a = 0; a < sc.nA; ++a)
                    for (int b = 0; b < sc.nB; ++b) {
                        const auto i = static_cast<std::size_t>(sc.index(x, y, a, b));
                        std::printf("x=%d y=%d a=%d b=%d lo=%.9f hi=%.9f\n", x, y, a, b,
                                    eb.lower[i], eb.upper[i]);
                    }
        emit_report(Json{{"schemaVersion", kSchemaVersion},
                         {"objective", o.objective},
                         {"delta", o.delta},
                         {"eps", o.eps},
                         {"status", to_string(eb.status)},
                         {"scenario", scenario_to_json(sc)},
                         {"lower", eb.lower},
                         {"upper", eb.upper}},
                    o.out);
        return eb.status == LPStatus::Optimal ? kExitOk : kExitInfeasible;
    }
    if (o.objective == "chsh-gap") {
        const PolytopeOptimum opt = min_chsh_minus_two_hardy();
        std::printf("status: %s\nbound: %.12f\n", to_string(opt.status), opt.value);
        emit_report(Json{{"schemaVersion", kSchemaVersion},
                         {"objective", o.objective},
                         {"status", to_string(opt.status)},
                         {"value", opt.value}},
                    o.out);
        return opt.status == LPStatus::Optimal ? kExitOk : kExitInfeasible;
    }
    if (o.objective == "blocks") {
        const std::vector<BlockReport> rows = randomness_other_inputs(frame, o.minHardy);
        Json jrows = Json::array();
        for (const BlockReport& r : rows) {
            std::printf("x=%d y=%d betaMax=%.9f strictlyRandom=%s margin=%.9f\n", r.x, r.y,
                        r.betaMax, r.strictlyRandom ? "true" : "false", r.margin);
            Json block = Json::array();
            for (const Event& e : r.block) block.push_back(Json::array({e.a, e.b, e.x, e.y}));
            jrows.push_back(Json{{"x", r.x},
                                 {"y", r.y},
                                 {"block", block},
                                 {"betaMax", r.betaMax},
                                 {"strictlyRandom", r.strictlyRandom},
                                 {"margin", r.margin}});
        }
        emit_report(Json{{"schemaVersion", kSchemaVersion},
                         {"objective", o.objective},
                         {"minHardy", o.minHardy},
                         {"blocks", jrows}},
                    o.out);
        return kExitOk;
    }
    throw DomainError("--objective must be pH, table, chsh-gap, or blocks");
}

// ----------------------------------------------------------------------- mdl

struct MdlOpts {
    std::string frame;
    double eps = 0.0;
    int bits = 0;
    std::string box;
    std::string out;
};

int cmd_mdl(const MdlOpts& o) {
    const HardyFrame frame = load_frame(o.frame);
    const int bits = o.bits > 0 ? o.bits : input_bits(frame.scenario);
    const BellFunctional f = mdl_functional(frame, o.eps, bits);
    const double classicalMax = classical_mdl_max(frame, o.eps);
    Json report{{"schemaVersion", kSchemaVersion},
                {"eps", o.eps},
                {"bitsPerRun", bits},
                {"lowWeight", std::pow(0.5 - o.eps, bits)},
                {"highWeight", std::pow(0.5 + o.eps, bits)},
                {"classicalMax", classicalMax},
                {"applyToJoint", f.applyToJoint},
                {"coefficients", f.coeff}};
    std::printf("classical max: %.6e\n", classicalMax);
    if (!o.box.empty()) {
        const ConditionalBox box = box_from_json(load_json_file(o.box));
        const double value = evaluate_functional(f, box, uniform_inputs(frame.scenario));
        std::printf("value: %.12f\n", value);
        report["value"] = value;
    }
    emit_report(report, o.out);
    return kExitOk;
}

// ------------------------------------------------------------------- certify

struct CertifyOpts {
    std::string in;
    std::string frame;
    double eps = 0.0;
    double t = 5.0;
    long long nsv = 0;
    std::string out;
};

int cmd_certify(const CertifyOpts& o) {
    const HardyFrame frame = load_frame(o.frame);
    const CountTable table = ingest_counts(o.in, frame.scenario);
    const long long n = table.total();
    const double deltaExp = delta_exp_from_counts(table, o.eps, frame);
    Json report{{"schemaVersion", kSchemaVersion},
                {"eps", o.eps},
                {"t", o.t},
                {"n", n},
                {"deltaExp", deltaExp}};
    if (deltaExp <= 0) {
        report["verdict"] = "abort";
        emit_report(report, o.out);
        std::printf("deltaExp=%.6e verdict=abort\n", deltaExp);
        return kExitCheckFailed;
    }
    SVParams sv;
    sv.epsilon = o.eps;
    const EntropyCertificate cert = certify(deltaExp, sv, n, 0.0, CertPath::Optimized);
    const KBits kb = k_bits(deltaExp, o.eps, n, o.t);
    const long long nSV = o.nsv > 0 ? o.nsv : n;
    const ExtractorParams xp = raz_check(nSV, n, o.eps, cert.hBound);
    report["certificate"] = certificate_to_json(cert);
    report["extractor"] = extractor_params_to_json(xp);
    report["kBits"] = Json{{"hBound", kb.hBound},
                           {"deltaRaz", kb.deltaRaz},
                           {"kReal", kb.kReal},
                           {"kFloor", kb.kFloor}};
    if (!xp.feasible || xp.deltaRaz <= 0) {
        report["verdict"] = "infeasible";
        emit_report(report, o.out);
        std::printf("deltaExp=%.6e deltaRaz=%.6f verdict=infeasible\n", deltaExp, xp.deltaRaz);
        return kExitInfeasible;
    }
    const SecurityReport sr =
        security_slack(xp.mRaz, cert.gamma, cert.mu, n, cert.deltaAz, kb.kReal, o.t);
    report["security"] = security_to_json(sr);
    const bool certified = kb.kFloor >= 1;
    report["verdict"] = certified ? "certified" : "infeasible";
    emit_report(report, o.out);
    std::printf("deltaExp=%.6e hBound=%.3f k=%.3f kFloor=%lld Delta=%.3e verdict=%s\n", deltaExp,
                cert.hBound, kb.kReal, kb.kFloor, sr.dComp, certified ? "certified" : "infeasible");
    return certified ? kExitOk : kExitInfeasible;
}

// --------------------------------------------------------------------- krate

struct KrateOpts {
    std::string in;
    std::string frame;
    std::string tList = "5,10,100";
    double epsMin = 0.0;
    double epsMax = 0.207;
    double epsStep = 0.005;
    long long nsv = 0;
    std::string out;
};

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw DomainError("bad numeric list entry: " + item);
        out.push_back(v);
    }
    return out;
}

int cmd_krate(const KrateOpts& o) {
    const HardyFrame frame = load_frame(o.frame);
    const CountTable table = ingest_counts(o.in, frame.scenario);
    const long long n = table.total();
    const std::vector<double> ts = parse_double_list(o.tList);
    if (o.epsStep <= 0) throw DomainError("--eps-step must be positive");
    std::vector<double> epsGrid;
    for (double e = o.epsMin; e <= o.epsMax + 1e-12; e += o.epsStep) epsGrid.push_back(e);

    struct Row {
        double eps = 0, t = 0, hBound = 0, deltaRaz = 0, kReal = 0;
        long long mRaz = 0, kFloor = 0;
    };
    std::vector<Row> rows(ts.size() * epsGrid.size());
    const long long nSV = o.nsv > 0 ? o.nsv : n;

    // The sweep is embarrassingly parallel over eps; output order is fixed
    // by the row index, so the thread count never changes the CSV.
    const auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t gi = lo; gi < hi; ++gi) {
            const double eps = epsGrid[gi];
            const double deltaExp = delta_exp_from_counts(table, eps, frame);
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                const KBits kb = k_bits(deltaExp, eps, n, ts[ti]);
                const ExtractorParams xp = raz_check(nSV, n, eps, kb.hBound);
                Row& r = rows[ti * epsGrid.size() + gi];
                r.eps = eps;
                r.t = ts[ti];
                r.hBound = kb.hBound;
                r.deltaRaz = kb.deltaRaz;
                r.mRaz = xp.mRaz;
                r.kReal = kb.kReal;
                r.kFloor = kb.kFloor;
            }
        }
    };
    const std::size_t nThreads = std::min<std::size_t>(
        static_cast<std::size_t>(thread_cap()), std::max<std::size_t>(epsGrid.size(), 1));
    if (nThreads <= 1 || epsGrid.size() <= 1) {
        worker(0, epsGrid.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (epsGrid.size() + nThreads - 1) / nThreads;
        for (std::size_t lo = 0; lo < epsGrid.size(); lo += chunk)
            pool.emplace_back(worker, lo, std::min(lo + chunk, epsGrid.size()));
        for (std::thread& th : pool) th.join();
    }

    std::ostringstream csv;
    csv << "eps,t,hBound,deltaRaz,mRaz,kReal,kFloor\n";
    csv.precision(12);
    for (const Row& r : rows)
        csv << r.eps << ',' << r.t << ',' << r.hBound << ',' << r.deltaRaz << ',' << r.mRaz << ','
            << r.kReal << ',' << r.kFloor << '\n';
    if (o.out.empty()) {
        std::fputs(csv.str().c_str(), stdout);
    } else {
        std::ofstream f(o.out);
        if (!f) throw ParseError("cannot open output file: " + o.out);
        f << csv.str();
    }
    return kExitOk;
}

// ------------------------------------------------------------------ simulate

struct SimulateOpts {
    std::string model = "honest";
    std::uint64_t seed = 0;
    long long n = 100000;
    double eps = 0.0;
    std::string theta = "opt";
    double eta = 0.0;
    double delta = 0.0;
    bool deltaSet = false;
    std::string mode = "iid";
    std::string in;
    std::string out;
    std::string countsOut;
};

int cmd_simulate(const SimulateOpts& o) {
    const double theta = o.theta == "opt" ? kIdealTheta : std::stod(o.theta);
    InputMode mode = InputMode::IidBiased;
    if (o.mode == "adaptive")
        mode = InputMode::Adaptive;
    else if (o.mode == "uniform")
        mode = InputMode::Uniform;
    else if (o.mode != "iid")
        throw DomainError("--mode must be iid, adaptive, or uniform");

    const BellScenario sc{2, 2, 2, 2};
    BoxSequenceModel model = BoxSequenceModel::honest(theta, o.eta);
    if (o.model == "deterministic") {
        // Local strategy a = x, b = 1 - y: the strongest deterministic
        // opponent of the measurement-dependent test (value 0 every run).
        const ConditionalBox fixed = deterministic_box(sc, {0, 1}, {1, 0});
        model = BoxSequenceModel::adversarial(
            [fixed](long long, const std::vector<Event>&) { return fixed; });
    } else if (o.model == "replay") {
        if (o.in.empty()) throw DomainError("--model replay requires --in counts");
        model = BoxSequenceModel::replay(ingest_counts(o.in, sc));
    } else if (o.model != "honest") {
        throw DomainError("--model must be honest, deterministic, or replay");
    }

    SVParams sv;
    sv.epsilon = o.eps;
    const Transcript tr = run_protocol(model, sv, o.n, o.seed, mode);

    Json report{{"schemaVersion", kSchemaVersion},
                {"model", o.model},
                {"mode", o.mode},
                {"n", tr.n},
                {"seed", tr.seed},
                {"eps", o.eps},
                {"theta", theta},
                {"eta", o.eta},
                {"Ln", tr.Ln}};
    int code = kExitOk;
    if (o.deltaSet) {
        const bool accepted = tr.Ln >= o.delta;
        report["delta"] = o.delta;
        report["accepted"] = accepted;
        code = accepted ? kExitOk : kExitCheckFailed;
    }
    std::printf("%s\n", report.dump(2).c_str());
    emit_report(report, o.out);
    if (!o.countsOut.empty()) {
        CountTable counts;
        counts.scenario = sc;
        counts.counts.assign(static_cast<std::size_t>(sc.cells()), 0);
        for (const Event& e : tr.records)
            ++counts.counts[static_cast<std::size_t>(sc.index(e.x, e.y, e.a, e.b))];
        write_counts_csv_file(o.countsOut, counts);
    }
    return code;
}

// -------------------------------------------------------------------- gadget

struct GadgetOpts {
    std::string in;
    std::string out;
    bool fourCopy = false;
    bool quantum = false;
};

int cmd_gadget_verify(const GadgetOpts& o) {
    const Gadget g = gadget_from_json(load_json_file(o.in));
    const GadgetVerdict v = verify_gadget(g);
    std::printf("gadget: %s, colorings enumerated: %ld\n", v.isGadget ? "true" : "false",
                v.colorings);
    emit_report(Json{{"schemaVersion", kSchemaVersion},
                     {"isGadget", v.isGadget},
                     {"v1Attainable", v.v1Attainable},
                     {"v2Attainable", v.v2Attainable},
                     {"colorings", v.colorings}},
                o.out);
    return v.isGadget ? kExitOk : kExitCheckFailed;
}

int cmd_gadget_compile(const GadgetOpts& o) {
    const Gadget g = gadget_from_json(load_json_file(o.in));
    const GadgetGame game = o.fourCopy ? four_copy_game(g) : complete_bases(g);
    const BellScenario sc = game.scenario();
    std::printf("game: inputs %dx%d, outcomes %d, cliques %zu\n", sc.nX, sc.nY, sc.nA,
                game.cliques.size());
    if (o.quantum) {
        const ConditionalBox box = mes_box(game);
        double total = 0.0;
        for (const Event& e : game.hardyEvents) total += box(e.x, e.y, e.a, e.b);
        std::printf("hardy probability: %.12f\n", total);
    }
    if (!o.out.empty()) save_json_file(o.out, game_to_json(game));
    return kExitOk;
}

// ------------------------------------------------------------------- extract

struct ExtractOpts {
    std::string x;
    std::string y;
};

std::vector<int> parse_bits(const std::string& s) {
    std::vector<int> bits;
    bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw DomainError("bit strings may contain only 0 and 1");
        bits.push_back(c - '0');
    }
    return bits;
}

int cmd_extract(const ExtractOpts& o) {
    std::printf("%d\n", cg_extract(parse_bits(o.x), parse_bits(o.y)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certification toolkit for Hardy-paradox randomness amplification"};
    app.require_subcommand(1);

    ValidateOpts vo;
    CLI::App* validate = app.add_subcommand("validate", "check a box JSON for normalization and no-signaling");
    validate->add_option("--in", vo.in, "box JSON file")->required();
    validate->add_option("--out", vo.out, "write a JSON report");
    validate->add_option("--tol", vo.tol, "violation tolerance");
    validate->add_flag("--skip-ns", vo.skipNoSignaling, "skip the no-signaling equalities");

    BoundOpts bo;
    CLI::App* bound = app.add_subcommand("bound", "polytope optimization over no-signaling boxes");
    bound->add_option("--frame", bo.frame, "Hardy frame JSON (default: built-in (2,2,2) frame)");
    bound->add_option("--objective", bo.objective, "pH | table | chsh-gap | blocks");
    bound->add_option("--zeros", bo.zeros, "pH objective: exact | relaxed");
    bound->add_option("--zh", bo.zH, "relaxed zero budget z_H");
    bound->add_option("--delta", bo.delta, "table objective: functional floor delta");
    bound->add_option("--eps", bo.eps, "table objective: source bias");
    bound->add_option("--min-hardy", bo.minHardy, "blocks objective: Hardy probability floor");
    bound->add_option("--dump-lp", bo.dumpLp, "write the LP as JSON for debugging");
    bound->add_option("--out", bo.out, "write a JSON report");

    MdlOpts mo;
    CLI::App* mdl = app.add_subcommand("mdl", "measurement-dependent functional report");
    mdl->add_option("--frame", mo.frame, "Hardy frame JSON (default: built-in (2,2,2) frame)");
    mdl->add_option("--eps", mo.eps, "source bias");
    mdl->add_option("--bits", mo.bits, "input bits charged per run (default: log2 of input count)");
    mdl->add_option("--box", mo.box, "evaluate the functional on this box JSON");
    mdl->add_option("--out", mo.out, "write a JSON report");

    CertifyOpts co;
    CLI::App* certifyCmd = app.add_subcommand("certify", "counts -> entropy bound -> extractor accounting");
    certifyCmd->add_option("--in", co.in, "counts CSV or JSON")->required();
    certifyCmd->add_option("--frame", co.frame, "Hardy frame JSON (default: built-in (2,2,2) frame)");
    certifyCmd->add_option("--eps", co.eps, "source bias");
    certifyCmd->add_option("--t", co.t, "security exponent t");
    certifyCmd->add_option("--nsv", co.nsv, "source bits consumed (default: number of runs)");
    certifyCmd->add_option("--out", co.out, "write a JSON report");

    KrateOpts ko;
    CLI::App* krate = app.add_subcommand("krate", "output-bit curves k(eps, t) as CSV");
    krate->add_option("--in", ko.in, "counts CSV or JSON")->required();
    krate->add_option("--frame", ko.frame, "Hardy frame JSON (default: built-in (2,2,2) frame)");
    krate->add_option("--t", ko.tList, "comma-separated t values");
    krate->add_option("--eps-min", ko.epsMin, "grid start");
    krate->add_option("--eps-max", ko.epsMax, "grid end (inclusive)");
    krate->add_option("--eps-step", ko.epsStep, "grid step");
    krate->add_option("--nsv", ko.nsv, "source bits consumed (default: number of runs)");
    krate->add_option("--out", ko.out, "CSV output path (default: stdout)");

    SimulateOpts so;
    CLI::App* simulate = app.add_subcommand("simulate", "run the protocol against a box model");
    simulate->add_option("--model", so.model, "honest | deterministic | replay");
    simulate->add_option("--seed", so.seed, "RNG seed")->required();
    simulate->add_option("--n", so.n, "number of runs");
    simulate->add_option("--eps", so.eps, "source bias");
    simulate->add_option("--theta", so.theta, "honest model state angle, or 'opt'");
    simulate->add_option("--eta", so.eta, "honest model white-noise level");
    CLI::Option* deltaOpt = simulate->add_option("--delta", so.delta, "acceptance threshold for L_n");
    simulate->add_option("--mode", so.mode, "input sampling: iid | adaptive | uniform");
    simulate->add_option("--in", so.in, "replay model: counts CSV or JSON");
    simulate->add_option("--out", so.out, "write the JSON report");
    simulate->add_option("--counts-out", so.countsOut, "write realized counts as CSV");

    GadgetOpts gvo;
    GadgetOpts gco;
    CLI::App* gadget = app.add_subcommand("gadget", "verify or compile orthogonality-graph gadgets");
    gadget->require_subcommand(1);
    CLI::App* gverify = gadget->add_subcommand("verify", "exhaustive coloring check");
    gverify->add_option("--in", gvo.in, "gadget JSON")->required();
    gverify->add_option("--out", gvo.out, "write a JSON report");
    CLI::App* gcompile = gadget->add_subcommand("compile", "complete bases and emit the two-party game");
    gcompile->add_option("--in", gco.in, "gadget JSON")->required();
    gcompile->add_flag("--four-copy", gco.fourCopy, "build the four-copy quaternion game instead");
    gcompile->add_flag("--quantum", gco.quantum, "also report the shared-state Hardy probability");
    gcompile->add_option("--out", gco.out, "write the compiled game JSON");

    ExtractOpts xo;
    CLI::App* extract = app.add_subcommand("extract", "inner-product extractor over two bit strings");
    extract->add_option("--x", xo.x, "first bit string")->required();
    extract->add_option("--y", xo.y, "second bit string")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        thread_cap();  // reject a malformed HARDYAMP_THREADS before any work
        if (validate->parsed()) return cmd_validate(vo);
        if (bound->parsed()) return cmd_bound(bo);
        if (mdl->parsed()) return cmd_mdl(mo);
        if (certifyCmd->parsed()) return cmd_certify(co);
        if (krate->parsed()) return cmd_krate(ko);
        if (simulate->parsed()) {
            so.deltaSet = deltaOpt->count() > 0;
            return cmd_simulate(so);
        }
        if (gadget->parsed()) {
            if (gverify->parsed()) return cmd_gadget_verify(gvo);
            return cmd_gadget_compile(gco);
        }
        if (extract->parsed()) return cmd_extract(xo);
    } catch (const SolverError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
    return kExitOk;
}
