#pragma once

#include "annuli/geometry.hpp"

#include <cstdint>
#include <random>

namespace annuli {

/// Seeded generator with a platform-independent uniform mapping, so seeded
/// runs reproduce bit-for-bit across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// log-uniform in [lo, hi], lo > 0.
    double log_uniform(double lo, double hi);
    std::uint64_t next() { return engine_(); }
    SpherePoint unit_vector();

private:
    std::mt19937_64 engine_;
};

}  // namespace annuli
