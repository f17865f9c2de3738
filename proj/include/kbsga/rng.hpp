#pragma once

/// @file rng.hpp
/// @brief Deterministic random stream shared by every stochastic component.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The conversions to real, integer and normal deviates are written
/// out here instead of using the <random> distributions, whose algorithms are
/// implementation-defined and would make results depend on the standard library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace kbsga {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Child seed for replication `index` of an experiment with `master` seed.
///
/// seed = mix64(mix64(master + G) ^ (index + 1) * G), G = 0x9E3779B97F4A7C15.
/// This mapping is part of the reproducibility contract: do not change it.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    return mix64(mix64(master + golden) ^ ((index + 1) * golden));
}

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Child stream for replication `index`; see derive_seed.
    static RngStream child(std::uint64_t master, std::uint64_t index) {
        return RngStream(derive_seed(master, index));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform real in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). Unbiased (rejection on the low tail).
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) {
            throw std::invalid_argument("uniform_index: empty range");
        }
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x >= threshold) {
                return x % n;
            }
        }
    }

    /// Uniform integer in the closed range [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) {
            throw std::invalid_argument("uniform_int: hi < lo");
        }
        const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (span == 0) { // full 64-bit range
            return static_cast<std::int64_t>(engine_());
        }
        return lo + static_cast<std::int64_t>(uniform_index(span));
    }

    /// Standard normal deviate (Box-Muller, one deviate per call, no cached state).
    double normal() {
        const double u1 = 1.0 - uniform01(); // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

  private:
    std::mt19937_64 engine_;
};

} // namespace kbsga
