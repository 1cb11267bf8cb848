#pragma once

#include <cstdint>
#include <random>

namespace anyplan {

/// Explicitly seeded random stream. All randomness in the library flows
/// through one of these; there is no global RNG. Each thread must own its
/// stream.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double gaussian() {
        return std::normal_distribution<double>(0.0, 1.0)(engine_);
    }

    std::uint64_t bits() { return engine_(); }

    /// Derive an independent substream seed from a master seed and a counter
    /// (splitmix64 finalizer).
    static std::uint64_t substream(std::uint64_t master, std::uint64_t index) {
        std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace anyplan
