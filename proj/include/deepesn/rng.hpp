#pragma once

#include <cstdint>
#include <limits>

namespace deepesn {

/// SplitMix64 finalizer of x + golden gamma:
///   z = x + 0x9E3779B97F4A7C15
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seeds of independent streams: mix64(seed ^ mix64((tag << 40) + (index << 20) + attempt)).
enum class StreamTag : std::uint64_t {
    input_weights = 1,
    inter_weights = 2,
    recurrent_weights = 3,
    realization = 4,
    task_data = 5,
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t index,
                                    std::uint64_t attempt = 0) noexcept
{
    return mix64(seed ^ mix64((static_cast<std::uint64_t>(tag) << 40) + (index << 20) + attempt));
}

/// xoshiro256** seeded with four successive SplitMix64 outputs
/// (state_i = mix64(seed + i * 0x9E3779B97F4A7C15), i = 0..3).
///
///   result = rotl(s1 * 5, 7) * 9
///   t = s1 << 17
///   s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45)
///
/// uniform() maps (next() >> 11) * 2^-53 onto [0, 1).
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept
    {
        for (std::uint64_t i = 0; i < 4; ++i) s_[i] = mix64(seed + i * 0x9E3779B97F4A7C15ULL);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

} // namespace deepesn
