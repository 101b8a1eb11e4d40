#pragma once

#include <cstdint>
#include <random>

namespace commsim {

// Deterministic random source for a single simulation run.
//
// All randomness in a run flows through one Rng instance seeded from the
// config. mt19937_64 output is fully specified by the standard and the
// distribution helpers below avoid std::uniform_*_distribution (whose
// algorithms are implementation-defined), so identical seeds give
// bit-identical trajectories on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1), 53 bits of precision.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, bound). bound must be nonzero.
    // Multiply-shift with rejection, unbiased.
    std::uint32_t below(std::uint32_t bound) {
        std::uint64_t x = next_u64() >> 32;
        std::uint64_t m = x * bound;
        std::uint32_t low = static_cast<std::uint32_t>(m);
        if (low < bound) {
            std::uint32_t threshold = (0u - bound) % bound;
            while (low < threshold) {
                x = next_u64() >> 32;
                m = x * bound;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

private:
    std::mt19937_64 engine_;
};

// Stable 64-bit mix (splitmix64 finalizer).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for one sweep cell: a stable hash of (base seed, cell, replicate) so
// cells can run in parallel in any order and still reproduce exactly.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t cell,
                                 std::uint64_t replicate) {
    std::uint64_t h = mix64(base_seed);
    h = mix64(h ^ mix64(cell + 1));
    h = mix64(h ^ mix64(replicate + 1));
    return h;
}

} // namespace commsim
