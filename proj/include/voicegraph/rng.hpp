#pragma once

#include <cmath>
#include <cstdint>

namespace vg {

// Deterministic 64-bit generator (SplitMix64 core). Used instead of the
// <random> distributions so identical seeds give identical streams on every
// platform and standard library, which the reproducibility contract of the
// batch pipeline depends on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Derives an independent substream, e.g. one per tree or per subject.
    static std::uint64_t stream(std::uint64_t seed, std::uint64_t index) {
        return mix(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform integer in [0, n). Multiply-shift; bias is below 2^-64 * n.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Standard normal via Box-Muller; caches the second value.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - unit(); // (0, 1]
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace vg
