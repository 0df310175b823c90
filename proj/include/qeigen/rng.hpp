#pragma once

#include <cstdint>

namespace qeigen {

// xoshiro256** seeded through splitmix64. Self-contained so that streams are
// bit-identical across platforms and standard-library versions (std::
// distributions are implementation-defined and unusable for reproducible
// output files).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Stream derivation for independent trials: stream(seed, i) =
    // splitmix64(splitmix64(seed) ^ splitmix64(i + golden_gamma)). Fixed by
    // contract; parallel sweeps must key streams this way so row order never
    // depends on scheduling.
    static std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t a = seed;
        std::uint64_t b = index + 0x9e3779b97f4a7c15ULL;
        return splitmix64_once(splitmix64_once(a) ^ splitmix64_once(b));
    }

    static Rng for_stream(std::uint64_t seed, std::uint64_t index) {
        return Rng(derive_stream(seed, index));
    }

  private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        return mix(x);
    }

    static std::uint64_t splitmix64_once(std::uint64_t x) { return mix(x + 0x9e3779b97f4a7c15ULL); }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

} // namespace qeigen
