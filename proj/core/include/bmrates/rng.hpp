#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace bmrates {

// Counter-seeded splitmix64 stream. Replicate i of a run draws from
// CounterRng(seed, i), so the stream depends only on (seed, i) and never on
// which worker thread executes the replicate.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
        state_ = mix(state_ ^ stream);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on (0, 1]; never returns 0 so log() stays finite.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; draws come in pairs.
    void next_gaussian_pair(double& g0, double& g1) {
        double u1 = next_unit();
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double ang = 2.0 * std::numbers::pi * u2;
        g0 = r * std::cos(ang);
        g1 = r * std::sin(ang);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
        z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
        return z ^ (z >> 33);
    }

    std::uint64_t state_;
};

}  // namespace bmrates
