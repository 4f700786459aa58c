#pragma once

#include <cstdint>

namespace rankdec {

/// SplitMix64. Counter based: the state advances by a fixed odd constant and
/// every output is a bijective mix of the counter, so `split` derives
/// independent streams from (seed, stream id) without sharing state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t uniform(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    Rng split(std::uint64_t stream) const { return Rng(mix(state_ ^ mix(stream + 0xD1B54A32D192ED03ULL))); }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

}  // namespace rankdec
