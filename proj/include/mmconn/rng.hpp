#pragma once

#include <cstdint>
#include <limits>

namespace mmconn {

/// SplitMix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t splitmix_finalize(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derived stream seed for trial `i` of a run seeded with `seed`. Depends only
/// on (seed, i), so results do not depend on how trials are scheduled.
constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t i)
{
    return splitmix_finalize(seed ^ splitmix_finalize(i + 0x9E3779B97F4A7C15ULL));
}

/// Counter-based 64-bit generator: the n-th output is the finalizer applied to
/// seed + n * golden-gamma. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()()
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix_finalize(state_);
    }

    /// Uniform double in [0,1) from the top 53 bits.
    constexpr double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::uint64_t state_;
};

}  // namespace mmconn
