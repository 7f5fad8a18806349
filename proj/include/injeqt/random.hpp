#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace injeqt
{

/*
 * SplitMix64. Used both as a generator and as the mixing function that
 * derives independent per-trial / per-rotation streams from one base seed,
 * so any sub-stream can be reconstructed from its coordinates alone.
 * */
class SplitMix64
{
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        return mix(z);
    }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Seed of sub-stream `index` under `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return SplitMix64::mix(SplitMix64::mix(seed ^ 0x6a09e667f3bcc909ULL) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept
{
    return derive_seed(derive_seed(seed, a), b);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept
{
    return derive_seed(derive_seed(seed, a, b), c);
}

/// Uniform double in (0, 1].
template <class Rng>
double uniform_open_closed(Rng& rng)
{
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

/// Attempts until first success, success probability 1 - discard_prob per attempt.
template <class Rng>
std::uint64_t sample_attempts(Rng& rng, double discard_prob)
{
    if (discard_prob <= 0.0)
        return 1;
    const double u = uniform_open_closed(rng);
    return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(discard_prob)));
}

/// Geometric(1/2) on {1, 2, ...}: one fair bit per trial.
template <class Rng>
std::uint64_t sample_fair_geometric(Rng& rng)
{
    std::uint64_t k = 1;
    for (;;)
    {
        const std::uint64_t word = rng();
        if (word != 0)
            return k + static_cast<std::uint64_t>(std::countr_zero(word));
        k += 64;
    }
}

}  // namespace injeqt
