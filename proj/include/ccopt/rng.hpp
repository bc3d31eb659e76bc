#pragma once

#include <cstdint>

// SplitMix64: a 64-bit counter-based generator (Weyl sequence hashed through
// two xor-multiply rounds). Chosen for cross-language reproducibility; the
// reference outputs for seeds 0 and 1234567 are frozen in the test suite.

namespace ccopt {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform in {0, ..., bound-1}, bound >= 1, unbiased via rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform integer in {lo, ..., hi} inclusive.
    std::uint64_t next_in(std::uint64_t lo, std::uint64_t hi) {
        return lo + next_below(hi - lo + 1);
    }

    bool next_bool() { return (next() >> 63) != 0; }

private:
    std::uint64_t state_;
};

// Independent stream derivation: the base seed xor the stream index,
// scrambled through one generator step. Used for per-replicate and
// per-cell seeding so streams never overlap by construction.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
    return SplitMix64(base_seed ^ index).next();
}

}  // namespace ccopt
