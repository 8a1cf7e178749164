#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace risopt {

/// splitmix64 finalizer. Used to derive independent stream seeds from a
/// master seed and counter indices, so Monte-Carlo drops are reproducible
/// regardless of execution order.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based stream seed: one stream per (drop, tag) pair.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t drop, std::uint64_t tag = 0) {
    std::uint64_t s = mix64(master);
    s = mix64(s ^ (0xA0761D6478BD642FULL * (drop + 1)));
    s = mix64(s ^ (0xE7037ED1A0B428DBULL * (tag + 1)));
    return s;
}

/// Seeded random stream with fixed sampling recipes. The standard
/// distributions are implementation-defined, so the samplers here are
/// spelled out to keep outputs byte-reproducible for a given seed.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; consumes exactly two draws.
    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Two-sided exponential with scale b (density ~ exp(-|x|/b));
    /// consumes exactly two draws.
    double laplace(double scale) {
        const double magnitude = -scale * std::log(uniform_pos());
        return (engine_() & 1ULL) ? magnitude : -magnitude;
    }

    /// Uniform phase on [0, 2*pi).
    double phase() { return uniform(0.0, 2.0 * M_PI); }

private:
    std::mt19937_64 engine_;
};

}  // namespace risopt
