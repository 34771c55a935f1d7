#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "counts.hpp"
#include "functional.hpp"
#include "quantum.hpp"
#include "rng.hpp"

namespace hardyamp {

/// How the protocol's two input bits per run are drawn.
enum class InputMode {
    IidBiased,  ///< every bit independently 0 with probability 1/2 + eps
    Adaptive,   ///< history-dependent test adversary within the SV bounds
    Uniform     ///< fair bits regardless of eps
};

/// SV-compliant input bit sequence, returned as one (x, y) pair per run.
/// Every conditional bit probability stays inside [1/2−eps, 1/2+eps]; the
/// adaptive adversary flips a half-strength bias with the parity of all
/// previous bits.
inline std::vector<std::pair<int, int>> sample_sv_inputs(const SVParams& params, long long n,
                                                         InputMode mode, std::uint64_t seed) {
    params.require();
    if (n < 0) throw DomainError("sample_sv_inputs: negative n");
    SplitMix64 rng = SplitMix64::stream(seed, 0);
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(n));
    int parity = 0;
    auto drawBit = [&]() {
        double p0 = 0.5;
        switch (mode) {
            case InputMode::IidBiased: p0 = 0.5 + params.epsilon; break;
            case InputMode::Adaptive:
                p0 = 0.5 + (parity ? -0.5 : 0.5) * params.epsilon;
                break;
            case InputMode::Uniform: p0 = 0.5; break;
        }
        const int bit = rng.nextBool(p0) ? 0 : 1;
        parity ^= bit;
        return bit;
    };
    for (long long i = 0; i < n; ++i) {
        const int x = drawBit();
        const int y = drawBit();
        out.emplace_back(x, y);
    }
    return out;
}

/// One protocol execution: per-run input/outcome records plus the cached
/// empirical functional average, recomputable from the records exactly.
struct Transcript {
    long long n = 0;
    std::vector<Event> records;
    std::uint64_t seed = 0;
    double Ln = 0.0;
};

/// Recompute the empirical average of a per-run functional over a transcript.
inline double recompute_ln(const Transcript& t, const BellFunctional& f) {
    f.require();
    if (t.n <= 0 || t.records.size() != static_cast<std::size_t>(t.n))
        throw StructuralError("recompute_ln: record count does not match n");
    double s = 0;
    for (const Event& e : t.records) s += f(e.x, e.y, e.a, e.b);
    return s / static_cast<double>(t.n);
}

/// Where each run's box comes from: a fixed honest quantum box, a
/// history-dependent adversarial supplier, or replay of recorded counts.
struct BoxSequenceModel {
    enum class Kind { Honest, Adversarial, Replay };

    Kind kind = Kind::Honest;
    double theta = 0.0;  ///< honest: state angle
    double eta = 0.0;    ///< honest: isotropic noise weight
    std::function<ConditionalBox(long long run, const std::vector<Event>& history)> program;
    CountTable counts;

    static BoxSequenceModel honest(double theta, double eta) {
        BoxSequenceModel m;
        m.kind = Kind::Honest;
        m.theta = theta;
        m.eta = eta;
        return m;
    }
    static BoxSequenceModel adversarial(
        std::function<ConditionalBox(long long, const std::vector<Event>&)> program) {
        BoxSequenceModel m;
        m.kind = Kind::Adversarial;
        m.program = std::move(program);
        return m;
    }
    static BoxSequenceModel replay(CountTable counts) {
        BoxSequenceModel m;
        m.kind = Kind::Replay;
        m.counts = std::move(counts);
        return m;
    }
};

namespace detail {

/// Draw one (a, b) cell from a box column given (x, y).
inline std::pair<int, int> sample_outcome(const ConditionalBox& box, int x, int y, SplitMix64& rng) {
    const BellScenario& sc = box.scenario();
    const double r = rng.nextDouble();
    double cum = 0;
    int la = sc.nA - 1, lb = sc.nB - 1;
    for (int a = 0; a < sc.nA; ++a)
        for (int b = 0; b < sc.nB; ++b) {
            const double p = box(x, y, a, b);
            if (p <= 0) continue;
            cum += p;
            la = a;
            lb = b;
            if (r < cum) return {a, b};
        }
    return {la, lb};  // r fell into the normalization tolerance gap
}

}  // namespace detail

/**
 * Run the binary two-setting protocol for n rounds: draw SV inputs, query the
 * model's box for each round, record outcomes, and accumulate the empirical
 * average L_n of the per-run functional value (the stored coefficient at the
 * realized event). Identical (model, params, n, seed, mode) reproduce
 * byte-identical transcripts.
 */
inline Transcript run_protocol(const BoxSequenceModel& model, const SVParams& params, long long n,
                               std::uint64_t seed, InputMode mode = InputMode::IidBiased) {
    params.require();
    if (n < 1) throw DomainError("run_protocol: n < 1");
    const HardyFrame frame = hardy222_frame();
    const BellFunctional f = mdl_functional(frame, params.epsilon);

    Transcript t;
    t.n = n;
    t.seed = seed;
    t.records.reserve(static_cast<std::size_t>(n));
    double sum = 0;

    if (model.kind == BoxSequenceModel::Kind::Replay) {
        model.counts.require();
        if (!(model.counts.scenario == frame.scenario))
            throw StructuralError("run_protocol: replay counts are not for the (2,2,2) scenario");
        const long long total = model.counts.total();
        if (total <= 0) throw DomainError("run_protocol: replay counts are empty");
        std::vector<double> cum(model.counts.counts.size(), 0.0);
        double acc = 0;
        for (std::size_t i = 0; i < cum.size(); ++i) {
            acc += static_cast<double>(model.counts.counts[i]) / static_cast<double>(total);
            cum[i] = acc;
        }
        SplitMix64 rng = SplitMix64::stream(seed, 1);
        const BellScenario& sc = frame.scenario;
        for (long long i = 0; i < n; ++i) {
            const double r = rng.nextDouble();
            std::size_t idx = static_cast<std::size_t>(
                std::lower_bound(cum.begin(), cum.end(), r) - cum.begin());
            if (idx >= cum.size()) idx = cum.size() - 1;
            // invert the box index: idx = ((x·nY + y)·nA + a)·nB + b
            const int b = static_cast<int>(idx) % sc.nB;
            const int a = static_cast<int>(idx) / sc.nB % sc.nA;
            const int y = static_cast<int>(idx) / (sc.nB * sc.nA) % sc.nY;
            const int x = static_cast<int>(idx) / (sc.nB * sc.nA * sc.nY);
            t.records.push_back(Event{a, b, x, y});
            sum += f(x, y, a, b);
        }
        t.Ln = sum / static_cast<double>(n);
        return t;
    }

    const auto inputs = sample_sv_inputs(params, n, mode, seed);
    SplitMix64 rng = SplitMix64::stream(seed, 1);

    ConditionalBox box = uniform_box(frame.scenario);
    bool haveBox = false;
    auto adoptBox = [&](ConditionalBox candidate) {
        if (haveBox && candidate.table() == box.table()) return;
        if (!(candidate.scenario() == frame.scenario))
            throw StructuralError("run_protocol: model box is not a (2,2,2) box");
        const ValidationReport rep = validate_box(candidate, 1e-9, true);
        if (!rep.ok())
            throw DomainError("run_protocol: model supplied a box that is not no-signaling");
        box = std::move(candidate);
        haveBox = true;
    };

    if (model.kind == BoxSequenceModel::Kind::Honest) {
        adoptBox(hardy_box(model.theta, model.eta));
    } else if (!model.program) {
        throw StructuralError("run_protocol: adversarial model without a program");
    }

    for (long long i = 0; i < n; ++i) {
        if (model.kind == BoxSequenceModel::Kind::Adversarial) adoptBox(model.program(i, t.records));
        const auto [x, y] = inputs[static_cast<std::size_t>(i)];
        const auto [a, b] = detail::sample_outcome(box, x, y, rng);
        t.records.push_back(Event{a, b, x, y});
        sum += f(x, y, a, b);
    }
    t.Ln = sum / static_cast<double>(n);
    return t;
}

/// Martingale tail bound 2·exp(−n·deltaAz²/2) on |L_n − L̄_n| ≥ deltaAz.
inline double azuma_bound(long long n, double deltaAz) {
    if (n < 1) throw DomainError("azuma_bound: n < 1");
    if (!(deltaAz > 0)) throw DomainError("azuma_bound: deltaAz must be positive");
    return 2.0 * std::exp(-static_cast<double>(n) * deltaAz * deltaAz / 2.0);
}

/// Exact count of runs whose conditional mean clears kappa, together with the
/// guaranteed lower bound ((avg − κ)/(1/16 − κ))·n. The count can never fall
/// below the bound when every value respects the 1/16 cap.
struct GoodRunCount {
    long long count = 0;
    double bound = 0.0;
};

inline GoodRunCount good_run_count(const std::vector<double>& meanValues, double kappa) {
    if (meanValues.empty()) throw DomainError("good_run_count: empty sequence");
    double sum = 0;
    for (double v : meanValues) {
        if (v > 1.0 / 16 + 1e-12)
            throw DomainError("good_run_count: a value exceeds the 1/16 cap");
        sum += v;
    }
    const double n = static_cast<double>(meanValues.size());
    const double avg = sum / n;
    if (!(kappa > 0 && kappa < avg))
        throw DomainError("good_run_count: kappa must lie strictly between 0 and the average");
    GoodRunCount out;
    for (double v : meanValues)
        if (v >= kappa) ++out.count;
    out.bound = (avg - kappa) / (1.0 / 16 - kappa) * n;
    return out;
}

/// Certified min-entropy of the good runs: μ·n·log2(1/γ) bits.
inline double min_entropy_product(double gamma, double mu, long long n) {
    if (!(gamma > 0 && gamma < 1)) throw DomainError("min_entropy_product: gamma outside (0,1)");
    if (!(mu > 0 && mu <= 1)) throw DomainError("min_entropy_product: mu outside (0,1]");
    return mu * static_cast<double>(n) * std::log2(1.0 / gamma);
}

namespace detail {

/// Entropy-rate objective: (n/4)·min{−μ·log2 γ, log2(e)·δ_Az²/4} − 3/4 with
/// μ = (δ_exp−δ_Az−κ)/(1/16−κ) and γ = 1 − κ/(2(1/4−ε²)²). Out-of-range
/// parameters score −1e18.
inline double entropy_rate_objective(double dexp, double dAz, double kap, double eps, double n) {
    const double denom = 1.0 / 16 - kap;
    if (denom <= 0) return -1e18;
    const double mu = (dexp - dAz - kap) / denom;
    const double q = 0.25 - eps * eps;
    const double g = 1.0 - kap / (2.0 * q * q);
    if (g <= 0 || mu <= 0) return -1e18;
    const double b1 = -mu * std::log2(g);
    const double b2 = std::log2(std::exp(1.0)) * dAz * dAz / 4.0;
    return n / 4.0 * std::min(b1, b2) - 0.75;
}

}  // namespace detail

/// Maximizer of the certified entropy over the Azuma slack and the good-run
/// threshold, by a refined midpoint grid (3 levels of 200×200 by default;
/// the level-to-level window shrink is two coarse cells around the best
/// Azuma slack, with the threshold range re-derived each time).
struct HBoundResult {
    double value = 0.0;
    double deltaAz = 0.0;
    double kappa = 0.0;
    bool aborted = false;  ///< deltaExp was not positive, nothing certifiable
};

inline HBoundResult h_bound(double deltaExp, double eps, long long n, int levels = 3,
                            int grid = 200) {
    if (levels < 1 || grid < 2) throw DomainError("h_bound: bad grid parameters");
    if (!(deltaExp > 0)) return HBoundResult{0.0, 0.0, 0.0, true};
    const double nd = static_cast<double>(n);
    double loA = 0.0, hiA = deltaExp;
    double bestV = -1e18, bestA = 0.0, bestK = 0.0;
    for (int lev = 0; lev < levels; ++lev) {
        for (int i = 0; i < grid; ++i) {
            const double dAz = loA + (hiA - loA) * (i + 0.5) / grid;
            if (!(dAz > 0 && dAz < deltaExp)) continue;
            const double kmax = deltaExp - dAz;
            for (int j = 0; j < grid; ++j) {
                const double kap = kmax * (j + 0.5) / grid;
                const double v = detail::entropy_rate_objective(deltaExp, dAz, kap, eps, nd);
                if (v > bestV) {
                    bestV = v;
                    bestA = dAz;
                    bestK = kap;
                }
            }
        }
        const double w = (hiA - loA) / grid * 2;
        loA = std::max(0.0, bestA - w);
        hiA = std::min(deltaExp, bestA + w);
    }
    if (bestV <= 0) return HBoundResult{0.0, bestA, bestK, false};
    return HBoundResult{bestV, bestA, bestK, false};
}

/// Observed certificate level from a count table: the Hardy-event frequency
/// at minimal SV weight minus the zero-event frequencies at maximal weight.
inline double delta_exp_from_counts(const CountTable& counts, double eps,
                                    const HardyFrame& frame = hardy222_frame()) {
    counts.require();
    frame.require();
    if (!(counts.scenario == frame.scenario))
        throw StructuralError("delta_exp_from_counts: counts scenario does not match the frame");
    if (!(eps >= 0 && eps < 0.5)) throw DomainError("delta_exp_from_counts: eps outside [0, 1/2)");
    if (counts.total() <= 0) throw DomainError("delta_exp_from_counts: zero total count");
    const double bits = input_bits(frame.scenario);
    const double wLow = std::pow(0.5 - eps, bits);
    const double wHigh = std::pow(0.5 + eps, bits);
    double v = counts.frequency(frame.hardyEvent.x, frame.hardyEvent.y, frame.hardyEvent.a,
                                frame.hardyEvent.b) *
               wLow;
    for (const Event& e : frame.zeroSet) v -= counts.frequency(e.x, e.y, e.a, e.b) * wHigh;
    return v;
}

/// Plain-gap lower bound implied by a weighted-functional value: divide out
/// the extreme per-input weights.
inline double bh_from_mdl(double bsv, double eps, double bitsPerRun) {
    return bsv / (std::pow(0.5 - eps, bitsPerRun) * std::pow(0.5 + eps, bitsPerRun));
}

/// Full accounting of one certification: observed level, concentration slack,
/// good-run threshold, entropy bound, and the accept/abort verdict.
struct EntropyCertificate {
    double deltaExp = 0.0;
    double eps = 0.0;
    long long n = 0;
    double deltaAz = 0.0;
    double kappa = 0.0;
    double mu = 0.0;
    double gamma = 1.0;
    double hBound = 0.0;
    bool accepted = false;
    double failureProb = 2.0;  ///< azuma_bound(n, deltaAz); vacuous 2 when rejected
};

/// How the certificate picks (deltaAz, kappa): the fixed chain
/// deltaAz = deltaExp/2, kappa = deltaExp/4, or the free grid optimization.
enum class CertPath { FixedRatios, Optimized };

inline EntropyCertificate certify(double deltaExp, const SVParams& params, long long n,
                                  double acceptThreshold, CertPath path = CertPath::Optimized) {
    params.require();
    if (n < 1) throw DomainError("certify: n < 1");
    EntropyCertificate cert;
    cert.deltaExp = deltaExp;
    cert.eps = params.epsilon;
    cert.n = n;
    cert.accepted = deltaExp >= acceptThreshold;
    if (!cert.accepted || deltaExp <= 0) return cert;

    double dAz = 0, kap = 0, hb = 0;
    if (path == CertPath::FixedRatios) {
        dAz = deltaExp / 2;
        kap = deltaExp / 4;
        hb = std::max(0.0, detail::entropy_rate_objective(deltaExp, dAz, kap, params.epsilon,
                                                          static_cast<double>(n)));
    } else {
        const HBoundResult r = h_bound(deltaExp, params.epsilon, n);
        dAz = r.deltaAz;
        kap = r.kappa;
        hb = r.value;
    }
    cert.deltaAz = dAz;
    cert.kappa = kap;
    cert.hBound = hb;
    if (kap > 0 && kap < 1.0 / 16) {
        cert.mu = (deltaExp - dAz - kap) / (1.0 / 16 - kap);
        const double q = 0.25 - params.epsilon * params.epsilon;
        cert.gamma = 1.0 - kap / (2.0 * q * q);
    }
    cert.failureProb = dAz > 0 ? azuma_bound(n, dAz) : 2.0;
    return cert;
}

inline EntropyCertificate certify_transcript(const Transcript& t, const SVParams& params,
                                             double delta, CertPath path = CertPath::Optimized) {
    return certify(t.Ln, params, t.n, delta, path);
}

}  // namespace hardyamp
