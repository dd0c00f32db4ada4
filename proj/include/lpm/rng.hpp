#pragma once

#include <cstdint>
#include <random>

namespace lpm {

// Seeded random stream used by every randomized component.
//
// The draw protocol is part of the reproducibility contract:
//   - next_u64()        one mt19937_64 output
//   - next_double()     one u64, mapped to [0,1) as (x >> 11) * 2^-53
//   - next_index(n)     one u64 minimum; rejection-resamples to remove
//                       modulo bias, so it may consume more than one
//   - next_normal()     one u64, mapped to the open interval (0,1) as
//                       (x >> 11) * 2^-53 + 2^-54, then through the
//                       inverse normal CDF
//
// Samplers document their per-step draw order in terms of these calls, so
// a port that reproduces mt19937_64 reproduces every result bit for bit.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Rejection keeps the distribution exact.
    std::size_t next_index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return static_cast<std::size_t>(r % bound);
        }
    }

    // Standard normal via inverse-CDF transform of one uniform draw.
    // Declared here, defined in stats.cpp next to normal_quantile.
    double next_normal();

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

// Stream-indexed seed derivation for replicated experiments: replicate k of
// a run with master seed s uses derive_seed(s, k). The scheme is the
// splitmix64 finalizer applied to s + (k+1) * golden-gamma, which gives
// well-separated engine seeds for consecutive counters.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    std::uint64_t z = master + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace lpm
