#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gazetrace/geometry.hpp"

namespace gazetrace {

// Deterministic RNG for the synthetic generator and tests. mt19937_64 output
// is fully specified by the standard; the value mappings below are hand-rolled
// so generated bytes never depend on library-specific distribution
// implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] via rejection-free modulo (bias is
    /// negligible for the small ranges used here and determinism is what
    /// matters).
    int64_t uniform_int(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(gen_() % static_cast<uint64_t>(hi - lo + 1));
    }

    /// Standard normal via Box-Muller (one value per call, no cached pair).
    double gaussian() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    double gaussian(double mean, double sigma) { return mean + sigma * gaussian(); }

    Vec3 unit_vec3() {
        Vec3 v;
        do {
            v = Vec3(gaussian(), gaussian(), gaussian());
        } while (v.norm() < 1e-12);
        return v.normalized();
    }

    uint64_t bits() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace gazetrace
