#pragma once

#include <cstdint>

namespace qeve {

// Counter-based generator: every draw is a pure function of
// (seed, pulse, slot), so pulses can be sharded across workers in any
// order without changing a single outcome.
struct PulseRng {
    std::uint64_t seed = 0;
    std::uint64_t pulse = 0;

    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t bits(std::uint64_t slot) const {
        const std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
        std::uint64_t h = mix(seed + gamma);
        h = mix(h + gamma * (pulse + 1));
        return mix(h + gamma * (slot + 1));
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform(std::uint64_t slot) const {
        return static_cast<double>(bits(slot) >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n) by multiply-shift on the top 32 bits.
    std::uint32_t choice(std::uint64_t slot, std::uint32_t n) const {
        const std::uint64_t x = bits(slot) >> 32;
        return static_cast<std::uint32_t>((x * n) >> 32);
    }
};

}  // namespace qeve
