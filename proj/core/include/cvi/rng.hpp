#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace cvi {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Order-sensitive hash of a list of integers.
constexpr std::uint64_t hash_values(std::initializer_list<std::uint64_t> values) noexcept {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto v : values) h = mix64(h ^ mix64(v));
    return h;
}

/// Stream split rule: child seed = seed XOR hash(tags...).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept {
    return seed ^ hash_values(tags);
}

/**
 * Reproducible random source.
 *
 * Backed by std::mt19937_64, whose output sequence is fixed by the C++
 * standard. The distributions below are implemented here rather than taken
 * from <random>, whose distribution algorithms are implementation-defined:
 *  - uniform01: top 53 bits of one draw, scaled to [0, 1).
 *  - normal: Box-Muller on two uniform draws, u1 in (0, 1]; the second
 *    variate of each pair is cached.
 *  - below(n): rejection sampling on the top bits, no modulo bias.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t bits = 64 - static_cast<std::uint64_t>(__builtin_clzll(n - 1));
        for (;;) {
            std::uint64_t v = engine_() >> (64 - bits);
            if (v < n) return v;
        }
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace cvi
