#pragma once

// Counter-based uniform variates: every draw is a pure hash of
// (seed, stream, index), so mesh generation is reproducible bit for bit
// regardless of evaluation order or thread count.

#include <cstdint>

namespace cpg {

// splitmix64 finalizer
inline std::uint64_t hash_mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Uniform double strictly inside (0,1).
inline double uniform_open01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const std::uint64_t h = hash_mix(hash_mix(hash_mix(seed) ^ stream) ^ index);
    return ((h >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace cpg
