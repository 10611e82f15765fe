#pragma once
// SplitMix64: seedable 64-bit-state PRNG with portable output. std::
// distributions are implementation-defined, so everything that must be
// reproducible across platforms (synthetic corpora, seeded tests) draws
// from this instead.

#include <cmath>
#include <cstdint>

namespace samas {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 bits of mantissa.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1]; safe to feed into log().
    double uniform_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    // Box-Muller, no caching so the draw sequence stays trivially portable.
    double gaussian() {
        const double u1 = uniform_open();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Independent deterministic stream per (master, index); used to generate
    // corpus items in parallel without sharing generator state.
    static SplitMix64 stream(std::uint64_t master, std::uint64_t index) {
        SplitMix64 seeder(master ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
        return SplitMix64(seeder.next());
    }

private:
    std::uint64_t state_;
};

} // namespace samas
