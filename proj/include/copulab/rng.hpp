#pragma once

#include <cstdint>

namespace copulab {

// Counter-based 64-bit generator (splitmix64 finalizer over a Weyl sequence).
// Draw i of the stream for a given seed is
//
//     mix64(seed + (i+1) * 0x9E3779B97F4A7C15)
//
// which makes every draw a pure function of (seed, i).  The stream is
// identical on any platform with exact 64-bit wrap-around arithmetic, so
// sample sets can be reproduced outside this library from the two-line
// recipe above.  Doubles are taken from the top 53 bits, uniform on [0,1).
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        counter_ += 1;
        return mix64(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
    }

    // Uniform on [0,1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace copulab
