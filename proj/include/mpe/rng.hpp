// rng.hpp
// Counter-based pseudorandom draws keyed by (seed, stream, counter).
// Every draw is a pure function of its key, so ensembles reproduce
// bit-for-bit under any parallel schedule and trajectories can be replayed
// from any cycle.

#pragma once

#include <cstdint>

namespace mpe {

// Stateless generator built from two rounds of the SplitMix64 finalizer.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    // Uniform double in [0, 1) for the given (stream, counter) pair.
    double uniform(std::uint64_t stream, std::uint64_t counter) const {
        return to_unit_interval(word(stream, counter));
    }

    std::uint64_t word(std::uint64_t stream, std::uint64_t counter) const {
        constexpr std::uint64_t gamma = 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = seed_;
        z = mix(z + gamma * (stream + 1));
        z = mix(z + gamma * (counter + 1));
        return z;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static double to_unit_interval(std::uint64_t w) {
        return static_cast<double>(w >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed_;
};

}  // namespace mpe
