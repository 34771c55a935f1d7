#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "protocol.hpp"

namespace hardyamp {

/// Largest SV bias the two-source accounting can absorb: 1/√2 − 1/2.
inline const double kExtractorEpsBoundary = 1.0 / std::sqrt(2.0) - 0.5;

/// Parameter sheet for the two-source extraction step. raz_check fills the
/// source/entropy fields and the four feasibility flags; k_bits and
/// security_slack complete t, k, and Delta.
struct ExtractorParams {
    long long nSV = 0;        ///< SV bits fed to the extractor
    long long n = 0;          ///< device runs
    double eps = 0.0;
    double hSV = 0.0;         ///< SV source min-entropy: −nSV·log2(1/2+eps)
    double hBox = 0.0;        ///< certified device min-entropy
    double deltaRaz = 0.0;    ///< −log2(1/2+eps) − 1/2 − 4·log2(n)/n
    long long mRaz = 0;       ///< floor(deltaRaz·hBox/40) − 1
    double t = 0.0;           ///< security parameter
    double kReal = 0.0;
    long long kFloor = 0;
    double Delta = 0.0;
    bool c1 = false;  ///< nSV ≥ 6·log2(nSV) + 2·log2(n)
    bool c2 = false;  ///< deltaRaz > 0
    bool c3 = false;  ///< hBox ≥ 5·log2(nSV − hSV)
    bool c4 = false;  ///< mRaz ≥ 1
    bool feasible = false;
};

inline double delta_raz(double eps, long long n) {
    const double nd = static_cast<double>(n);
    return -std::log2(0.5 + eps) - 0.5 - 4.0 * std::log2(nd) / nd;
}

/// Evaluate the four extraction feasibility constraints. Report-style: never
/// throws on an infeasible combination, the flags carry the verdict.
inline ExtractorParams raz_check(long long nSV, long long n, double eps, double hBox) {
    if (nSV < 1 || n < 1) throw DomainError("raz_check: source sizes must be positive");
    if (!(eps >= 0 && eps < 0.5)) throw DomainError("raz_check: eps outside [0, 1/2)");
    if (hBox < 0) throw DomainError("raz_check: negative hBox");
    ExtractorParams p;
    p.nSV = nSV;
    p.n = n;
    p.eps = eps;
    p.hSV = -static_cast<double>(nSV) * std::log2(0.5 + eps);
    p.hBox = hBox;
    p.deltaRaz = delta_raz(eps, n);
    p.c1 = static_cast<double>(nSV) >=
           6.0 * std::log2(static_cast<double>(nSV)) + 2.0 * std::log2(static_cast<double>(n));
    p.c2 = p.deltaRaz > 0;
    const double gap = static_cast<double>(nSV) - p.hSV;
    p.c3 = gap <= 1.0 || hBox >= 5.0 * std::log2(gap);
    p.mRaz = p.c2 ? static_cast<long long>(std::floor(p.deltaRaz * hBox / 40.0)) - 1 : 0;
    p.c4 = p.mRaz >= 1;
    p.feasible = p.c1 && p.c2 && p.c3 && p.c4;
    return p;
}

/// Output-length accounting: k = ((3/80)·deltaRaz·hBound − (t+3))/2, clamped
/// at 0. The rate factor multiplies the total certified entropy, so the
/// formula carries no extra factor of n.
struct KBits {
    double hBound = 0.0;
    double deltaRaz = 0.0;
    double kUnclamped = 0.0;  ///< before the clamp; shifts by −1/2 per unit of t
    double kReal = 0.0;
    long long kFloor = 0;
};

inline KBits k_bits(double deltaExp, double eps, long long n, double t) {
    if (t < 0) throw DomainError("k_bits: negative t");
    KBits out;
    out.hBound = h_bound(deltaExp, eps, n).value;
    out.deltaRaz = delta_raz(eps, n);
    out.kUnclamped = (3.0 / 80.0 * out.deltaRaz * out.hBound - (t + 3.0)) / 2.0;
    out.kReal = std::max(0.0, out.kUnclamped);
    out.kFloor = static_cast<long long>(std::floor(out.kReal));
    return out;
}

/// Distance-from-uniform accounting for the extractor output.
struct SecurityReport {
    double epsAz = 0.0;        ///< 2·exp(−n·deltaAz²/4)
    double failureProb = 0.0;  ///< (gamma^(mu·n) + 2·epsAz)^(1/4)
    double dist = 0.0;         ///< 2^(−1.5·mRaz) + 2·failureProb
    double dComp = 0.0;        ///< composable distance 2^k·dist (the slack Delta)
    double qBitBound = 0.0;    ///< per-string guarantee (1 + Delta)/2^k
    double t = 0.0;
    bool conditionHolds = false;  ///< Delta ≤ 2^(−t)
    /// The guarantee is conditional on everything the adversary holds: the
    /// device inputs and outputs, the extra extractor seed bits, and any
    /// no-signaling side information. None of these enter the arithmetic.
    std::string conditionedOn = "device inputs/outputs, extractor seed, no-signaling side information";
};

inline SecurityReport security_slack(long long mRaz, double gamma, double mu, long long n,
                                     double deltaAz, double k, double t) {
    if (!(gamma > 0 && gamma <= 1)) throw DomainError("security_slack: gamma outside (0,1]");
    if (!(mu >= 0 && mu <= 1)) throw DomainError("security_slack: mu outside [0,1]");
    if (n < 1) throw DomainError("security_slack: n < 1");
    SecurityReport r;
    r.t = t;
    r.epsAz = 2.0 * std::exp(-static_cast<double>(n) * deltaAz * deltaAz / 4.0);
    r.failureProb = std::pow(std::pow(gamma, mu * static_cast<double>(n)) + 2.0 * r.epsAz, 0.25);
    r.dist = std::pow(2.0, -1.5 * static_cast<double>(mRaz)) + 2.0 * r.failureProb;
    r.dComp = r.dist * std::pow(2.0, k);
    r.qBitBound = (1.0 + r.dComp) / std::pow(2.0, k);
    r.conditionHolds = r.dComp <= std::pow(2.0, -t);
    return r;
}

/// Inner product mod 2 of two equal-length bit strings: the one-bit
/// two-source extractor.
inline int cg_extract(const std::vector<int>& xBits, const std::vector<int>& yBits) {
    if (xBits.size() != yBits.size()) throw StructuralError("cg_extract: length mismatch");
    int acc = 0;
    for (std::size_t i = 0; i < xBits.size(); ++i) {
        if ((xBits[i] & ~1) != 0 || (yBits[i] & ~1) != 0)
            throw DomainError("cg_extract: inputs must be bits");
        acc ^= xBits[i] & yBits[i];
    }
    return acc;
}

/// Pluggable extractor: maps two bit strings to output bits. The bundled
/// implementation wraps cg_extract and emits a single bit; multi-bit
/// extractors can be swapped in behind the same signature.
using BitExtractor = std::function<std::vector<int>(const std::vector<int>&, const std::vector<int>&)>;

inline BitExtractor cg_extractor() {
    return [](const std::vector<int>& x, const std::vector<int>& y) {
        return std::vector<int>{cg_extract(x, y)};
    };
}

}  // namespace hardyamp
