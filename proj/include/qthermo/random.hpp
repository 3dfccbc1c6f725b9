// random.hpp - portable, seedable random streams
//
// SplitMix64 (Steele, Lea & Flood 2014) with the standard constants. Each
// sample index gets its own stream whose state starts at
//     mix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15),
// so the k-th sample is the same no matter which order samples are drawn in.
// Normals come from the Box–Muller transform on 53-bit uniforms; no
// implementation-defined <random> distributions are involved.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace qthermo {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t state) : state_(state) {}

    /// Independent stream for sample `index` of a run seeded with `master`.
    static constexpr SplitMix64 for_index(std::uint64_t master, std::uint64_t index) {
        return SplitMix64(mix64(master + (index + 1) * kGoldenGamma));
    }

    constexpr std::uint64_t next() {
        state_ += kGoldenGamma;
        return mix64(state_);
    }
    constexpr std::uint64_t operator()() { return next(); }

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

    /// Uniform in (0, 1].
    double uniform_open0() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Pair of independent standard normals.
    std::pair<double, double> normal_pair() {
        const double radius = std::sqrt(-2.0 * std::log(uniform_open0()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    std::uint64_t state_;
};

}  // namespace qthermo
