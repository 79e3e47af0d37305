#pragma once

#include <cstdint>
#include <random>

namespace abf {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic substream seed derived from a base seed and up to two
/// stream indices; makes per-pair Monte-Carlo results order-independent.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a = 0,
                                    std::uint64_t b = 0) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t a = 0,
                                std::uint64_t b = 0) {
    return std::mt19937_64(substream_seed(seed, a, b));
}

}  // namespace abf
