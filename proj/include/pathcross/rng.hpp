#pragma once

#include <cstdint>
#include <random>

namespace pathcross {

// splitmix64 step; used to key independent per-path streams so Monte Carlo
// results do not depend on scheduling order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t path_index) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= path_index * 0xDA942042E4DD58B5ULL + 0x2545F4914F6CDD1DULL;
    std::uint64_t b = splitmix64(s);
    return std::mt19937_64(a ^ (b + 0x9E3779B97F4A7C15ULL));
}

} // namespace pathcross
