#pragma once

#include <cstdint>

namespace candid {

// splitmix64 (Steele, Lea & Flood). Chosen as the model-update generator
// because its sequence is fully specified by the state word alone, so runs
// replay bit-exactly from a seed regardless of platform or standard library.
//
// Draw discipline used by the update phase (see updater.cpp): one
// next_double() per update gate check, one next_below() per neighbor
// choice, consumed in raster-scan order. Changing this ordering changes
// every downstream mask, so it is part of the output contract.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution. Consumes one draw.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, k), k >= 1. Consumes one draw.
    int next_below(int k) { return static_cast<int>(next_double() * static_cast<double>(k)); }

    std::uint64_t state() const { return state_; }

    // Decorrelated child seed for stream index `index` (used to give every
    // synthetic frame its own generator so frames can be rendered in any order).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 r(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
        return r.next_u64();
    }

    friend bool operator==(const SplitMix64&, const SplitMix64&) = default;

private:
    std::uint64_t state_;
};

}  // namespace candid
