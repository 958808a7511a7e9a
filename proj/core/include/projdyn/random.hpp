#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "projdyn/error.hpp"

namespace projdyn {

/// SplitMix64 finalizer. Used to derive independent per-block seeds so that
/// sampler output depends only on (seed, block index), never on scheduling.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// std::*_distribution output is implementation-defined; these helpers keep the
// bit patterns of every sample reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t n) {
        // Lemire-style rejection keeps the draw unbiased.
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    cplx complex_normal() { return {normal(), normal()}; }

    /// Uniform in the closed unit disc of the complex plane.
    cplx unit_disc() {
        const double r = std::sqrt(uniform());
        const double a = 2.0 * std::numbers::pi * uniform();
        return std::polar(r, a);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace projdyn
