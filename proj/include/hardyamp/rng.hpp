#pragma once

#include <cstdint>

namespace hardyamp {

/**
 * Splittable counter-seeded PRNG (SplitMix64).
 *
 * A 64-bit master seed plus a stream index deterministically defines every
 * stream: stream(seed, i) jumps the master sequence by a fixed odd stride per
 * index, so independent components (simulation batches, parties, repetitions)
 * can draw from non-overlapping streams without coordination. Reproducibility
 * is part of the contract: the same (seed, stream, call sequence) yields the
 * same values on every platform.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double nextDouble() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Bernoulli draw: true with probability p.
    bool nextBool(double p) { return nextDouble() < p; }

    /// Derived independent stream; also usable as split() for subtasks.
    SplitMix64 split() { return SplitMix64(next()); }

    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 g(seed ^ (0x5851f42d4c957f2dULL * (index + 1)));
        g.next();  // decorrelate adjacent indices
        return g;
    }

private:
    std::uint64_t state_;
};

}  // namespace hardyamp
