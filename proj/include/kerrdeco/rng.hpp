// Counter-based random number generation for the Monte Carlo oracle.
//
// Each variate is a pure function of (seed, index): the stream can be sampled
// at any offset, split across workers by partitioning index ranges, and
// reproduces bit-identically for a fixed seed regardless of evaluation order.
// Gaussian variates come from a deterministic Box-Muller transform.

#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

namespace kerrdeco::rng {

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::uint64_t value_at(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + (index + 1) * golden_gamma);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double unit_at(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(value_at(seed, index) >> 11) * 0x1.0p-53;
}

struct GaussPair {
    double z0 = 0.0;
    double z1 = 0.0;
};

/// Standard-normal pair from uniforms 2*pair_index and 2*pair_index + 1.
inline GaussPair gauss_pair_at(std::uint64_t seed, std::uint64_t pair_index) {
    const double u1 = 1.0 - unit_at(seed, 2 * pair_index);  // (0, 1], safe for log
    const double u2 = unit_at(seed, 2 * pair_index + 1);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Compensated (Kahan) accumulator for long reductions.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace kerrdeco::rng
