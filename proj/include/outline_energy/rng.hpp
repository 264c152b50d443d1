#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace outline_energy::rng {

/// splitmix64 finalizer; used only for seed mixing, never as the stream itself.
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Stable sub-seed for the stream identified by (seed, tag, index).
/// Independent of evaluation order, so per-item streams can be drawn in
/// parallel and still reproduce the sequential output byte for byte.
inline std::uint64_t substream_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index)
{
    return mix64(mix64(mix64(seed) ^ fnv1a64(tag)) ^ index);
}

/// Deterministic random stream.
///
/// Engine: std::mt19937_64 (bit-exact by the C++ standard for a given seed).
/// Uniform doubles take the top 53 bits, offset by half an ulp into (0, 1).
/// Gaussians use the Box-Muller transform, cosine branch only: each call
/// consumes exactly two uniforms and nothing is cached. These choices are
/// load-bearing for reproducibility; do not swap in std::normal_distribution,
/// whose algorithm is implementation-defined.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    Stream(std::uint64_t seed, std::string_view tag, std::uint64_t index)
        : engine_(substream_seed(seed, tag, index))
    {
    }

    /// Uniform draw in the open interval (0, 1).
    double uniform01()
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw (Box-Muller, cosine branch).
    double normal()
    {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Unbiased uniform integer in [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace outline_energy::rng
