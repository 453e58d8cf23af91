#pragma once

#include <array>
#include <cstdint>

namespace ridgesplit {

/// Identifies one independent random stream. The generator state is a pure
/// function of the three fields, so any (stream_id, trial_index) pair can be
/// reconstructed from the master seed alone, in any order, on any worker.
struct RngSeed {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
    std::uint64_t trial_index = 0;
};

// SplitMix64 finalizer; full-avalanche mix of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives a child stream label from a base label and an index (used to give
/// every grid point or purpose its own independent stream).
inline std::uint64_t substream(std::uint64_t base, std::uint64_t index) {
    return mix64(base ^ mix64(index + 0x517CC1B727220A95ULL));
}

/// xoshiro256** seeded by hashing (master_seed, stream_id, trial_index).
/// Distributions are generated in-house (not std::<x>_distribution) so the
/// byte stream is identical across standard library implementations.
class Rng {
  public:
    explicit Rng(const RngSeed& seed) {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL;
        h = mix64(h ^ seed.master_seed);
        h = mix64(h ^ seed.stream_id);
        h = mix64(h ^ seed.trial_index);
        // SplitMix64 chain fills the four state words.
        for (auto& w : state_) {
            h += 0x9E3779B97F4A7C15ULL;
            w = mix64(h);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
            state_[0] = 1;  // all-zero is the one invalid xoshiro state
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5ULL, 7) * 9ULL;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log() argument.
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; consumes two uniforms per pair.
    double next_normal();

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ridgesplit
