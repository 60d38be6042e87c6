#ifndef POLYURN_RNG_HPP
#define POLYURN_RNG_HPP

#include <cstdint>

namespace polyurn {

/// SplitMix64; used to expand seeds into generator state.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

/**
 * xoshiro256** (Blackman/Vigna). Pinned generator: golden simulation outputs
 * depend on this exact update and on the replica seeding scheme below, so it
 * must not change between versions.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& limb : s_) limb = sm.next();
    }

    /// Stream for replica r of a run seeded with `seed`: the SplitMix64 chain
    /// is started at seed, then displaced by (r+1) * golden ratio increment.
    static Rng for_replica(std::uint64_t seed, std::uint64_t replica) {
        SplitMix64 sm{seed};
        sm.state += (replica + 1) * 0x9E3779B97F4A7C15ull;
        Rng rng;
        for (auto& limb : rng.s_) limb = sm.next();
        return rng;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Unbiased draw from {0, ..., bound-1} by rejection.
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t threshold = (-bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    Rng() = default;
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace polyurn

#endif  // POLYURN_RNG_HPP
