#pragma once

#include <cmath>
#include <cstdint>

namespace wigner {

/// Counter-based seedable generator (splitmix-style output function over a
/// keyed counter). Independent streams are derived by hashing (seed, stream
/// ids), so parallel Monte Carlo replicas get reproducible, non-overlapping
/// randomness regardless of scheduling. Output is platform-independent.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x7c159e3779b97f4aULL)) {}

    /// Derived independent stream; chain calls for (purpose, replica) pairs.
    Rng stream(std::uint64_t id) const {
        Rng child(*this);
        child.key_ = mix(key_ ^ mix(id + 0x2545f4914f6cdd1dULL));
        child.ctr_ = 0;
        child.has_spare_ = false;
        return child;
    }
    Rng stream(std::uint64_t a, std::uint64_t b) const { return stream(a).stream(b); }

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL;
        return mix(z);
    }

    /// Uniform on [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Standard normal via Box-Muller (one spare cached).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// +1 or -1 with equal probability.
    double rademacher() { return (next_u64() >> 63) ? 1.0 : -1.0; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 33;
        z *= 0xff51afd7ed558ccdULL;
        z ^= z >> 33;
        z *= 0xc4ceb9fe1a85ec53ULL;
        z ^= z >> 33;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace wigner
