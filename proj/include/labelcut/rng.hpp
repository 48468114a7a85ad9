#pragma once

#include <cstdint>

namespace labelcut
{
    /// SplitMix64 finalizer; the mixing step used for every seed derivation.
    constexpr auto mix64(std::uint64_t x) -> std::uint64_t
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Derives an independent stream seed from (seed, stream index, sub index).
    constexpr auto derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t sub = 0) -> std::uint64_t
    {
        return mix64(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL)) + sub);
    }

    /// Small counter-based generator. Draws depend only on (seed, draw index),
    /// so results do not change with the standard library in use.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : state_(seed) {}

        auto next() -> std::uint64_t
        {
            state_ += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = state_;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        /// Uniform in [0, bound); bound must be positive.
        auto below(std::uint64_t bound) -> std::uint64_t
        {
            std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
            std::uint64_t x;
            do
                x = next();
            while (x >= limit);
            return x % bound;
        }

        /// Uniform in [0, 1) with 53 bits of precision.
        auto unit() -> double
        {
            return static_cast<double>(next() >> 11) * 0x1.0p-53;
        }

    private:
        std::uint64_t state_;
    };
}
