#pragma once

#include <cstdint>

namespace qit {

/// Seed value for the toolkit's random number generator. Identical seeds
/// reproduce identical sampling sequences bit for bit.
struct RngSeed {
    std::uint64_t value = 0;
};

/// Seedable, splittable generator (splitmix64 core). Every stochastic
/// operation in the library takes one of these explicitly; nothing draws
/// from hidden global state.
class Rng {
  public:
    Rng() = default;
    explicit Rng(RngSeed seed) : state_(seed.value) {}
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 bits of entropy.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection against the last partial block keeps the draw unbiased.
        std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

    /// Derive an independent child generator. Used to parallelize
    /// Monte-Carlo batches while keeping each run reproducible.
    Rng split() {
        std::uint64_t s = next_u64();
        return Rng(s ^ 0x3c79ac492ba7b653ULL);
    }

  private:
    std::uint64_t state_ = 0;
};

}  // namespace qit
